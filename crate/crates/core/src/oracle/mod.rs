//! Independent numerical verification: adaptive quadrature for the integral
//! definitions, finite-difference residuals for the pseudo-diffusion
//! equations, Fourier-reconstruction cross-checks, and the combinatorial
//! identity chain.

pub mod checks;
pub mod identities;
pub mod pde;
pub mod quadrature;
pub mod report;
pub mod suites;

pub use checks::{
    corr_c3_quadrature, ft_husimi_fock_quadrature, ft_marginal_q_quadrature,
    husimi_normalization_2d, kernel_weighted_box, marginal_p_quadrature, marginal_q_normalization,
    marginal_q_quadrature, reconstruct_husimi,
};
pub use identities::{identity_suite, identity_suite_with};
pub use pde::{pde_residual_husimi, pde_residual_marginal, MarginalAxis, ResidualReport};
pub use quadrature::{integrate_1d, integrate_2d, integrate_interval, QuadratureSpec};
pub use report::{all_pass, CheckResult};
pub use suites::{
    suite_all, suite_correlation, suite_identities, suite_kernels, suite_marginals, suite_pde,
};
