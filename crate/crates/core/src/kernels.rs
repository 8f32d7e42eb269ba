//! Fourier-domain squeeze-propagation kernels and the Fourier transforms of
//! the unsqueezed distributions.
//!
//! The full kernel `K(ξ,η;λ,φ)` factorizes into the two reduced marginal
//! kernels and a correlation factor, `K = k_Q k_R k_C`. All kernels are
//! exposed both as values and as log-domain exponents; the exponent form is
//! what multiplicative identities should be checked against, since the value
//! form can saturate f64 for extreme frames.

use crate::phase_space::SqueezeFrame;
use crate::specfun::{
    binomial_row, hermite_ladder_real, laguerre_half, laguerre_half_zero_table, ScaledReal,
};

/// A point (ξ, η) in the Fourier plane; ξ is conjugate to q, η to p.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierPoint {
    pub xi: f64,
    pub eta: f64,
}

impl FourierPoint {
    pub fn new(xi: f64, eta: f64) -> Self {
        Self { xi, eta }
    }
}

/// log K(ξ,η;λ,φ): the quadratic form
/// `-(λ-1)/(4λ) { [λ sin²(φ/2) - cos²(φ/2)] ξ² + [λ cos²(φ/2) - sin²(φ/2)] η²
///   + (λ+1) sin φ ξ η }`.
pub fn kernel_exponent(fp: FourierPoint, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let coeff = -(lambda - 1.0) / (4.0 * lambda);
    coeff
        * ((lambda * s2 - c2) * fp.xi * fp.xi
            + (lambda * c2 - s2) * fp.eta * fp.eta
            + (lambda + 1.0) * frame.sin_phi() * fp.xi * fp.eta)
}

/// Propagation kernel K(ξ,η;λ,φ).
pub fn kernel(fp: FourierPoint, frame: &SqueezeFrame) -> f64 {
    kernel_exponent(fp, frame).exp()
}

/// log k_Q(ξ;λ,φ) = -(λ-1)/(4λ) [λ sin²(φ/2) - cos²(φ/2)] ξ².
pub fn kernel_q_exponent(xi: f64, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    -(lambda - 1.0) / (4.0 * lambda) * (lambda * frame.sin2_half() - frame.cos2_half()) * xi * xi
}

/// Reduced kernel propagating the q-marginal.
pub fn kernel_q(xi: f64, frame: &SqueezeFrame) -> f64 {
    kernel_q_exponent(xi, frame).exp()
}

/// log k_R(η;λ,φ) = -(λ-1)/(4λ) [λ cos²(φ/2) - sin²(φ/2)] η².
pub fn kernel_r_exponent(eta: f64, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    -(lambda - 1.0) / (4.0 * lambda) * (lambda * frame.cos2_half() - frame.sin2_half()) * eta * eta
}

/// Reduced kernel propagating the p-marginal.
pub fn kernel_r(eta: f64, frame: &SqueezeFrame) -> f64 {
    kernel_r_exponent(eta, frame).exp()
}

/// log k_C(ξ,η;λ,φ) = -((λ²-1)/(4λ)) sin φ ξ η.
pub fn kernel_c_exponent(fp: FourierPoint, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    -((lambda * lambda - 1.0) / (4.0 * lambda)) * frame.sin_phi() * fp.xi * fp.eta
}

/// Correlation factor of the kernel; identically 1 at φ = nπ and at λ = 1.
pub fn kernel_c(fp: FourierPoint, frame: &SqueezeFrame) -> f64 {
    kernel_c_exponent(fp, frame).exp()
}

/// Both sides of the sign-flip identity
/// `exp((λ⁻¹ξ² + λη²)/2) K(ξ,η;λ,0) = exp((λ+1)(η² + λ⁻¹ξ²)/4) = K(ξ,η;-λ,0)`.
///
/// The two returned values are mathematically identical; the pair exposes the
/// identity for verification.
pub fn kernel_glauber_flip(fp: FourierPoint, lambda: f64) -> (f64, f64) {
    let frame = SqueezeFrame::new(lambda, 0.0).expect("positive lambda");
    let lhs = (0.5 * (fp.xi * fp.xi / lambda + lambda * fp.eta * fp.eta)
        + kernel_exponent(fp, &frame))
    .exp();
    let rhs = (0.25 * (lambda + 1.0) * (fp.eta * fp.eta + fp.xi * fp.xi / lambda)).exp();
    (lhs, rhs)
}

/// Fourier transform of the unsqueezed Fock-state Husimi function:
/// `((-1)^n / (2^{2n} n!)) Σ_k C(n,k) H_{2k}(ξ/√2) H_{2(n-k)}(η/√2)
///  exp(-(ξ²+η²)/2)`.
pub fn ft_husimi_fock(n: u32, fp: FourierPoint) -> f64 {
    let hx = hermite_ladder_real(2 * n, fp.xi / std::f64::consts::SQRT_2);
    let hy = hermite_ladder_real(2 * n, fp.eta / std::f64::consts::SQRT_2);
    let binom = binomial_row(n);
    let mut sum = ScaledReal::ZERO;
    for k in 0..=n as usize {
        sum = sum + (hx[2 * k] * hy[2 * (n as usize - k)]).mul_f64(binom[k]);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let fact = ScaledReal::factorial(n);
    let envelope = ScaledReal::from_exp(-0.5 * (fp.xi * fp.xi + fp.eta * fp.eta));
    (sum * envelope)
        .mul_f64(sign * fact.mantissa().recip())
        .scale_exp2(-fact.exponent() - 2 * n as i64)
        .to_f64()
}

/// Fourier transform of the unsqueezed q-marginal:
/// `Σ_k L_{n-k}^{(-1/2)}(0) L_k^{(-1/2)}(ξ²/2) exp(-ξ²/2)`.
pub fn ft_marginal_q(n: u32, xi: f64) -> f64 {
    let zeros = laguerre_half_zero_table(n);
    let arg = 0.5 * xi * xi;
    let mut sum = ScaledReal::ZERO;
    for k in 0..=n {
        sum = sum + laguerre_half(k, arg).mul_f64(zeros[(n - k) as usize]);
    }
    (sum * ScaledReal::from_exp(-arg)).to_f64()
}

/// Symmetric 2x2 quadratic-form matrix of `log[K(ξ,η;λ,φ) e^{-w(ξ²+η²)/2}]`,
/// the Gaussian part of a kernel-weighted transform with envelope weight `w`.
pub fn kernel_gaussian_form(frame: &SqueezeFrame, envelope_weight: f64) -> [[f64; 2]; 2] {
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let coeff = -(lambda - 1.0) / (4.0 * lambda);
    let a = coeff * (lambda * s2 - c2) - 0.5 * envelope_weight;
    let c = coeff * (lambda * c2 - s2) - 0.5 * envelope_weight;
    let b = 0.5 * coeff * (lambda + 1.0) * frame.sin_phi();
    [[a, b], [b, c]]
}

/// Largest eigenvalue of a symmetric 2x2 matrix.
pub fn sym_max_eigenvalue(m: [[f64; 2]; 2]) -> f64 {
    let half_trace = 0.5 * (m[0][0] + m[1][1]);
    let half_gap = 0.5 * (m[0][0] - m[1][1]);
    half_trace + (half_gap * half_gap + m[0][1] * m[0][1]).sqrt()
}

/// Margin used by the negative-definiteness test of the reconstruction form.
pub const INTEGRABILITY_MARGIN: f64 = 1e-9;

/// Whether `K(ξ,η;λ,φ) e^{-w(ξ²+η²)/2}` decays in every direction.
///
/// The kernel alone is unbounded; existence of a kernel-weighted transform
/// depends on the envelope of the transformed function. Reconstruction
/// operations must refuse when this is false.
pub fn kernel_weighted_integrable(frame: &SqueezeFrame, envelope_weight: f64) -> bool {
    sym_max_eigenvalue(kernel_gaussian_form(frame, envelope_weight)) < -INTEGRABILITY_MARGIN
}
