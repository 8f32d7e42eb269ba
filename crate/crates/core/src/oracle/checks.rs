//! Quadrature-backed oracles for the closed-form distributions.
//!
//! Every closed form in the library has an independent integral definition;
//! these helpers evaluate those integrals with adaptive quadrature over boxes
//! sized from the Gaussian envelope of each integrand (boundary values below
//! 1e-16 of the peak), so truncation is provably below the tolerances.

use crate::error::Error;
use crate::kernels::{
    ft_husimi_fock, ft_marginal_q, kernel_exponent, kernel_gaussian_form,
    kernel_weighted_integrable, sym_max_eigenvalue, FourierPoint,
};
use crate::oracle::quadrature::{
    integrate_2d, integrate_2d_complex, integrate_interval, QuadratureSpec,
};
use crate::phase_space::{husimi_fock, PhasePoint, SqueezeFrame};
use num_complex::Complex64;

const SQRT_2PI: f64 = 2.5066282746310002;

/// Margin factor translating "Gaussian below 1e-16 at the boundary" into a
/// box half-width: sqrt(40) covers the envelope, the polynomial stretch is
/// added per order at the call sites.
fn envelope_width(gamma: f64, order: u32) -> f64 {
    ((40.0f64).sqrt() + ((2 * order + 1) as f64).sqrt() + 4.0) / gamma.sqrt()
}

/// Center and Gaussian decay rate of the Husimi function along p at fixed q:
/// the exponent is `-(D₁ p² + 2 cs(λ-1) q p + D₂ q²)/(λ+1)`.
fn p_slice_geometry(frame: &SqueezeFrame, q: f64) -> (f64, f64) {
    let lambda = frame.lambda();
    let d1 = frame.cos2_half() + lambda * frame.sin2_half();
    let cross = frame.cos_half() * frame.sin_half() * (lambda - 1.0);
    (-cross * q / d1, d1 / (lambda + 1.0))
}

/// `∫ dp/√(2π) P_n(p,q;λ,φ)` — the integral definition of the q-marginal.
pub fn marginal_q_quadrature(
    n: u32,
    q: f64,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let (center, gamma) = p_slice_geometry(frame, q);
    let w = envelope_width(gamma, n);
    let f = |p: f64| husimi_fock(n, PhasePoint::new(p, q), frame).value / SQRT_2PI;
    integrate_interval(&f, center - w, center + w, spec)
}

/// `∫ dq/√(2π) P_n(p,q;λ,φ)` — the integral definition of the p-marginal.
pub fn marginal_p_quadrature(
    n: u32,
    p: f64,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let lambda = frame.lambda();
    let d2 = lambda * frame.cos2_half() + frame.sin2_half();
    let cross = frame.cos_half() * frame.sin_half() * (lambda - 1.0);
    let center = -cross * p / d2;
    let gamma = d2 / (lambda + 1.0);
    let w = envelope_width(gamma, n);
    let f = |q: f64| husimi_fock(n, PhasePoint::new(p, q), frame).value / SQRT_2PI;
    integrate_interval(&f, center - w, center + w, spec)
}

/// `∫ dp dq/(2π) P_n(p,q;λ,φ)`; equals 1 for every frame.
pub fn husimi_normalization_2d(
    n: u32,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    // The position-space quadratic form has eigenvalues λ/(λ+1) and 1/(λ+1).
    let lambda = frame.lambda();
    let gamma = lambda.min(1.0) / (lambda + 1.0);
    let box_spec = QuadratureSpec {
        half_width: envelope_width(gamma, n),
        ..*spec
    };
    let f = |p: f64, q: f64| {
        husimi_fock(n, PhasePoint::new(p, q), frame).value / (2.0 * std::f64::consts::PI)
    };
    integrate_2d(f, &box_spec)
}

/// `∫ dq/√(2π) Q_n(q;λ,φ)`; equals 1 for every frame.
pub fn marginal_q_normalization(
    n: u32,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let lambda = frame.lambda();
    let d1 = frame.cos2_half() + lambda * frame.sin2_half();
    let gamma = lambda / ((lambda + 1.0) * d1);
    let w = envelope_width(gamma, n);
    let f = |q: f64| crate::marginals::marginal_q(n, q, frame).value / SQRT_2PI;
    integrate_interval(&f, -w, w, spec)
}

/// Box half-width for a kernel-weighted Fourier integrand under a Gaussian
/// envelope `e^{-w(ξ²+η²)/2}`; refuses when the combined quadratic form is
/// not negative definite, since the integral then does not exist.
pub fn kernel_weighted_box(
    frame: &SqueezeFrame,
    envelope_weight: f64,
    order: u32,
) -> Result<f64, Error> {
    let max_eig = sym_max_eigenvalue(kernel_gaussian_form(frame, envelope_weight));
    if !kernel_weighted_integrable(frame, envelope_weight) {
        return Err(Error::KernelUnbounded {
            max_eigenvalue: max_eig,
        });
    }
    Ok(envelope_width(-2.0 * max_eig, 2 * order))
}

/// The unsqueezed transforms carry a unit Gaussian envelope.
fn kernel_box(frame: &SqueezeFrame, order: u32) -> Result<f64, Error> {
    kernel_weighted_box(frame, 1.0, order)
}

/// Reconstructs the Husimi function from its Fourier representation,
/// `∫ dξ dη/(2π) e^{i(ηp - ξq)} K(ξ,η;λ,φ) P̃_n(ξ,η)`.
///
/// Refuses with [`Error::KernelUnbounded`] when the kernel-weighted envelope
/// is not negative definite. The full complex phase is integrated; the
/// imaginary part vanishes by parity and is checked to do so.
pub fn reconstruct_husimi(
    n: u32,
    point: PhasePoint,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let box_spec = QuadratureSpec {
        half_width: kernel_box(frame, n)?,
        ..*spec
    };
    let f = |xi: f64, eta: f64| {
        let fp = FourierPoint::new(xi, eta);
        Complex64::new(0.0, eta * point.p - xi * point.q).exp()
            * kernel_exponent(fp, frame).exp()
            * ft_husimi_fock(n, fp)
            / (2.0 * std::f64::consts::PI)
    };
    integrate_2d_complex(f, &box_spec)
}

/// Kernel-propagated marginal product,
/// `∫ dξ dη/(2π) e^{i(ηp - ξq)} K(ξ,η;λ,φ) Q̃_n(ξ) R̃_n(η)` — the integral
/// definition of the closed correlation component `C⁽³⁾`. The imaginary
/// part vanishes by parity and is checked to do so.
pub fn corr_c3_quadrature(
    n: u32,
    point: PhasePoint,
    frame: &SqueezeFrame,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let box_spec = QuadratureSpec {
        half_width: kernel_box(frame, n)?,
        ..*spec
    };
    let f = |xi: f64, eta: f64| {
        let fp = FourierPoint::new(xi, eta);
        Complex64::new(0.0, eta * point.p - xi * point.q).exp()
            * kernel_exponent(fp, frame).exp()
            * ft_marginal_q(n, xi)
            * ft_marginal_q(n, eta)
            / (2.0 * std::f64::consts::PI)
    };
    integrate_2d_complex(f, &box_spec)
}

/// Forward Fourier transform of the unsqueezed Husimi function by 2D
/// quadrature: `∫ dp dq/(2π) e^{-i(ηp - ξq)} P_n(p,q)` (cosine part; the
/// sine part vanishes by parity).
pub fn ft_husimi_fock_quadrature(
    n: u32,
    fp: FourierPoint,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let box_spec = QuadratureSpec {
        half_width: envelope_width(0.5, n),
        ..*spec
    };
    let f = |p: f64, q: f64| {
        (fp.eta * p - fp.xi * q).cos()
            * crate::phase_space::husimi_unsqueezed(n, PhasePoint::new(p, q))
            / (2.0 * std::f64::consts::PI)
    };
    integrate_2d(f, &box_spec)
}

/// Forward Fourier transform of the unsqueezed q-marginal by quadrature:
/// `∫ dq/√(2π) e^{iξq} Q_n(q)` (cosine part).
pub fn ft_marginal_q_quadrature(
    n: u32,
    xi: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let w = envelope_width(0.5, n);
    let f = |q: f64| (xi * q).cos() * crate::marginals::marginal_q_unsqueezed(n, q) / SQRT_2PI;
    integrate_interval(&f, -w, w, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marginals::{marginal_p, marginal_q};

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1.0, 1e-10, 1e-11, 4000)
    }

    #[test]
    fn quadrature_recovers_q_marginal() {
        let frame = SqueezeFrame::new(21.0, 0.7).unwrap();
        let (v, _) = marginal_q_quadrature(3, 2.0, &frame, &spec()).unwrap();
        let closed = marginal_q(3, 2.0, &frame).value;
        assert!(
            (v - closed).abs() <= 1e-8 * closed.max(1e-12),
            "{v} vs {closed}"
        );
    }

    #[test]
    fn quadrature_recovers_p_marginal() {
        let frame = SqueezeFrame::new(5.0, 0.4).unwrap();
        let (v, _) = marginal_p_quadrature(2, 1.3, &frame, &spec()).unwrap();
        let closed = marginal_p(2, 1.3, &frame).value;
        assert!(
            (v - closed).abs() <= 1e-8 * closed.max(1e-12),
            "{v} vs {closed}"
        );
    }

    #[test]
    fn unsqueezed_distribution_is_normalized() {
        let frame = SqueezeFrame::new(1.0, 0.0).unwrap();
        let (v, _) = husimi_normalization_2d(2, &frame, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "norm = {v}");
    }

    #[test]
    fn reconstruction_identity_at_unit_lambda() {
        // K ≡ 1 at λ = 1, so the transform must invert exactly.
        let frame = SqueezeFrame::new(1.0, 0.0).unwrap();
        let pt = PhasePoint::new(0.6, -0.9);
        let (v, _) = reconstruct_husimi(2, pt, &frame, &spec()).unwrap();
        let direct = crate::phase_space::husimi_unsqueezed(2, pt);
        assert!((v - direct).abs() < 1e-8, "{v} vs {direct}");
    }

    #[test]
    fn reconstruction_reproduces_squeezed_husimi() {
        let frame = SqueezeFrame::new(2.0, 1.1).unwrap();
        let pt = PhasePoint::new(1.0, 0.5);
        for n in 0..=6u32 {
            let (v, _) = reconstruct_husimi(n, pt, &frame, &spec()).unwrap();
            let direct = husimi_fock(n, pt, &frame).value;
            assert!((v - direct).abs() <= 1e-6, "n={n}: {v} vs {direct}");
        }
    }

    #[test]
    fn non_decaying_kernel_weight_is_refused() {
        // An envelope too wide to tame the growing kernel direction must be
        // rejected before any quadrature runs.
        let frame = SqueezeFrame::new(4.0, 0.0).unwrap();
        assert!(matches!(
            kernel_weighted_box(&frame, 0.001, 2),
            Err(Error::KernelUnbounded { max_eigenvalue }) if max_eigenvalue > 0.0
        ));
        assert!(kernel_weighted_box(&frame, 1.0, 2).is_ok());
    }

    #[test]
    fn ft_quadrature_matches_closed_forms() {
        let fp = FourierPoint::new(1.0, 1.0);
        let (v, _) = ft_husimi_fock_quadrature(2, fp, &spec()).unwrap();
        assert!((v - ft_husimi_fock(2, fp)).abs() < 1e-8);
        let (v, _) = ft_marginal_q_quadrature(2, 1.5, &spec()).unwrap();
        assert!((v - ft_marginal_q(2, 1.5)).abs() < 1e-8);
    }
}
