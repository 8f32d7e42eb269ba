//! Squeezed-state Husimi functions of photon-number (Fock) states.
//!
//! The library evaluates the Husimi function `P_n(p,q;λ,φ)` of a Fock state
//! in a squeezed-state basis through two independent closed forms (a complex
//! Hermite form and a half-order Laguerre form), decomposes it into marginal
//! distributions `Q_n`, `R_n` and a correlation part `C_n`, and provides the
//! Fourier-domain kernels that propagate the unsqueezed distributions in the
//! squeeze parameter. An `oracle` module supplies adaptive quadrature,
//! finite-difference residuals for the pseudo-diffusion equations, and the
//! combinatorial identity checks used by the verification suites.
//!
//! All evaluation paths run in power-of-two scaled arithmetic so that large
//! polynomial orders and extreme squeeze parameters never overflow an `f64`
//! intermediate.

pub mod correlation;
pub mod error;
pub mod kernels;
pub mod marginals;
pub mod oracle;
pub mod phase_space;
pub mod specfun;

pub use error::Error;
pub use phase_space::{
    DistributionKind, DistributionSample, Flags, PhasePoint, RotatedPoint, SqueezeFrame,
};
pub use specfun::{ScaledComplex, ScaledReal};
