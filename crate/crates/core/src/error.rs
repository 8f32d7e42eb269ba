//! Error type shared by the evaluation and verification modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Squeeze frame parameters out of range (λ must be positive and finite).
    #[error("invalid squeeze frame: lambda = {lambda} (must be finite and > 0)")]
    InvalidFrame { lambda: f64 },

    /// A denominator Pochhammer factor of a terminating hypergeometric sum
    /// vanishes before the series terminates.
    #[error("degenerate hypergeometric parameters: (c)_l vanishes at l = {index} with nonzero numerator")]
    DegenerateParameters { index: u32 },

    /// The Hermite-product marginal form is only defined where β² is positive
    /// and finite.
    #[error("outside validity region of the Hermite-product marginal form: beta^2 = {beta_sq}")]
    OutsideValidityRegion { beta_sq: f64 },

    /// The bilinear Hermite resummation behind the closed correlation form
    /// requires |2 α₁ α₂ α₃| < 1; the offending value is reported.
    #[error("correlation resummation outside its convergence domain: |2 a1 a2 a3| = {coupling}")]
    ConvergenceDomain { coupling: f64 },

    /// The Gaussian quadratic form of a kernel-weighted integrand is not
    /// negative definite, so the reconstruction integral does not exist.
    #[error("kernel-weighted integrand is not integrable: max quadratic-form eigenvalue = {max_eigenvalue}")]
    KernelUnbounded { max_eigenvalue: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {value} with error bound {err_est}")]
    NoConvergence { value: f64, err_est: f64 },

    /// The imaginary part of a nominally real integral failed to vanish.
    #[error("imaginary residual {residual} exceeds tolerance in a nominally real integral")]
    ImaginaryResidual { residual: f64 },

    /// A finite-difference residual was requested too close to a singular
    /// manifold of the evaluated distribution.
    #[error("frame too close to a singular manifold for finite differences: lambda = {lambda}")]
    SingularManifold { lambda: f64 },
}
