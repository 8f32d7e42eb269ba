//! Closed-form marginal distributions of the Fock-state Husimi function.
//!
//! `Q_n(q;λ,φ)` integrates the Husimi function over p, `R_n(p;λ,φ)` over q.
//! The primary evaluation folds each bracketed power of the closed form into
//! a scaled half-order Laguerre factor, which keeps the expression finite on
//! the singular manifolds λ = 1 and λ = cot²(φ/2). A Hermite-product form
//! valid on a restricted parameter region and the coefficients linking the
//! two expansions are provided as independent cross-check paths.

use crate::error::Error;
use crate::phase_space::{DistributionKind, DistributionSample, Flags, PhasePoint, SqueezeFrame};
use crate::specfun::{
    binomial_row, hermite_ladder_real, hyp2f1_regularized, laguerre_half_scaled_ladder,
    laguerre_half_zero_table, ScaledReal,
};
use std::ops::Mul;

/// |s| below this marks a sample as evaluated on a singular manifold of the
/// unscaled closed form (the scaled route itself stays regular).
pub const SINGULAR_SCALE_TOL: f64 = 1e-8;

/// The Gaussian-width parameters of the marginal closed forms.
///
/// `beta_sq` is stored signed: outside the Hermite-form validity region it is
/// negative (β imaginary) and on the region boundary it diverges. Identities
/// involving β only ever need (α/β)² = `alpha_sq / beta_sq`, so no square
/// root of a negative value is taken.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarginalParams {
    pub alpha_sq: f64,
    pub beta_sq: f64,
}

impl MarginalParams {
    /// α² = λ/((λ+1)[cos²(φ/2)+λ sin²(φ/2)]),
    /// β² = λ/((λ-1)[cos²(φ/2)-λ sin²(φ/2)]).
    pub fn from_frame(frame: &SqueezeFrame) -> Self {
        let lambda = frame.lambda();
        let c2 = frame.cos2_half();
        let s2 = frame.sin2_half();
        Self {
            alpha_sq: lambda / ((lambda + 1.0) * (c2 + lambda * s2)),
            beta_sq: lambda / ((lambda - 1.0) * (c2 - lambda * s2)),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_sq.sqrt()
    }

    /// β as a real number, when it is one.
    pub fn beta_real(&self) -> Option<f64> {
        if self.beta_sq.is_finite() && self.beta_sq > 0.0 {
            Some(self.beta_sq.sqrt())
        } else {
            None
        }
    }
}

/// Unsqueezed marginal `Q_n(q) = exp(-q²/2) Σ_k L_{n-k}^{(-1/2)}(0) q^{2k}/(2^k k!)`.
pub fn marginal_q_unsqueezed(n: u32, q: f64) -> f64 {
    let zeros = laguerre_half_zero_table(n);
    let half_q2 = 0.5 * q * q;
    let mut term = ScaledReal::ONE;
    let mut sum = ScaledReal::from_f64(zeros[n as usize]);
    for k in 1..=n as usize {
        term = term.mul_f64(half_q2 / k as f64);
        sum = sum + term.mul_f64(zeros[n as usize - k]);
    }
    (sum * ScaledReal::from_exp(-half_q2)).to_f64().max(0.0)
}

/// Scale and argument of the folded Laguerre factors of the q-marginal:
/// `s = (λ-1)(cos²-λ sin²)/((λ+1)(cos²+λ sin²))`,
/// `x = 2 λ² q² / ((λ+1)²(cos²+λ sin²)²)`, so that
/// `s^k L_k^{(-1/2)}(x/s)` reproduces each bracketed-power-times-Laguerre term.
fn marginal_q_fold(frame: &SqueezeFrame, q: f64) -> (f64, f64, f64, f64) {
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let d = c2 + lambda * s2;
    let lp1 = lambda + 1.0;
    let scale = (lambda - 1.0) * (c2 - lambda * s2) / (lp1 * d);
    let x = 2.0 * lambda * lambda * q * q / (lp1 * lp1 * d * d);
    let gauss = lambda * q * q / (lp1 * d);
    let prefactor = (2.0 * lambda / (lp1 * d)).sqrt();
    (scale, x, gauss, prefactor)
}

/// Marginal distribution `Q_n(q;λ,φ)` of the squeezed Fock-state Husimi
/// function, regular on all singular manifolds.
pub fn marginal_q(n: u32, q: f64, frame: &SqueezeFrame) -> DistributionSample {
    let (scale, x, gauss, prefactor) = marginal_q_fold(frame, q);
    let zeros = laguerre_half_zero_table(n);
    let ladder = laguerre_half_scaled_ladder(n, scale, x);
    let mut sum = ScaledReal::ZERO;
    let mut sign = 1.0f64;
    for k in 0..=n as usize {
        sum = sum + ladder[k].mul_f64(sign * zeros[n as usize - k]);
        sign = -sign;
    }
    let value = (sum * ScaledReal::from_exp(-gauss))
        .mul_f64(prefactor)
        .to_f64()
        .max(0.0);
    DistributionSample {
        kind: DistributionKind::MarginalQ,
        n,
        frame: *frame,
        point: PhasePoint::new(0.0, q),
        value,
        flags: Flags {
            singular_fallback: scale.abs() < SINGULAR_SCALE_TOL,
            ..Flags::default()
        },
    }
}

/// Marginal distribution `R_n(p;λ,φ)`, evaluated through the exact reflection
/// `R(p;λ,φ) = Q(p;λ⁻¹,φ)`.
pub fn marginal_p(n: u32, p: f64, frame: &SqueezeFrame) -> DistributionSample {
    let inner = marginal_q(n, p, &frame.recip_lambda());
    DistributionSample {
        kind: DistributionKind::MarginalP,
        n,
        frame: *frame,
        point: PhasePoint::new(p, 0.0),
        value: inner.value,
        flags: inner.flags,
    }
}

/// `R_n(p;λ,φ)` from its own closed form, retained as a cross-check against
/// the reflection route used by [`marginal_p`].
pub fn marginal_p_direct(n: u32, p: f64, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let d = lambda * c2 + s2;
    let lp1 = lambda + 1.0;
    let scale = (lambda - 1.0) * (lambda * c2 - s2) / (lp1 * d);
    let x = -2.0 * lambda * lambda * p * p / (lp1 * lp1 * d * d);
    let zeros = laguerre_half_zero_table(n);
    let ladder = laguerre_half_scaled_ladder(n, scale, x);
    let mut sum = ScaledReal::ZERO;
    for k in 0..=n as usize {
        sum = sum + ladder[n as usize - k].mul_f64(zeros[k]);
    }
    let gauss = lambda * p * p / (lp1 * d);
    let prefactor = (2.0 * lambda / (lp1 * d)).sqrt();
    (sum * ScaledReal::from_exp(-gauss))
        .mul_f64(prefactor)
        .to_f64()
        .max(0.0)
}

/// Hermite-product form of the q-marginal,
/// `(√(2α²)/(2^n n!)) (α/β)^n e^{-(αq)²} Σ_k L_{n-k}^{(k)}(0)
///  [(β/(2α))(α²/β²-1)]^{n-k} H_k(βq) H_{2n-k}(αq)`.
///
/// Only defined where β is real, i.e. for 1 < λ < cot²(φ/2) or
/// cot²(φ/2) < λ < 1; outside that region the evaluation refuses.
pub fn marginal_q_hermite_form(n: u32, q: f64, frame: &SqueezeFrame) -> Result<f64, Error> {
    let params = MarginalParams::from_frame(frame);
    let beta = params.beta_real().ok_or(Error::OutsideValidityRegion {
        beta_sq: params.beta_sq,
    })?;
    let alpha = params.alpha();
    let bracket = beta / (2.0 * alpha) * (params.alpha_sq / params.beta_sq - 1.0);
    let hb = hermite_ladder_real(n, beta * q);
    let ha = hermite_ladder_real(2 * n, alpha * q);
    let binom = binomial_row(n);
    let mut sum = ScaledReal::ZERO;
    for k in 0..=n as usize {
        // L_{n-k}^{(k)}(0) = C(n, k)
        let coeff = ScaledReal::pow_f64(bracket, n - k as u32).mul_f64(binom[k]);
        sum = sum + coeff * hb[k] * ha[2 * n as usize - k];
    }
    let fact = ScaledReal::factorial(n);
    let pref = ScaledReal::from_f64((2.0 * params.alpha_sq).sqrt())
        .mul(ScaledReal::pow_f64(alpha / beta, n))
        .mul(ScaledReal::from_exp(-params.alpha_sq * q * q))
        .mul_f64(fact.mantissa().recip())
        .scale_exp2(-fact.exponent() - n as i64);
    Ok((pref * sum).to_f64())
}

/// Coefficient `(-1)^k [2(n-k)-1]!!/[2(n-k)]!! (α/β)^{2k}` linking the
/// Hermite-product marginal expansion to its half-order Laguerre series.
pub fn laguerre_expansion_coeff(n: u32, k: u32, alpha: f64, beta: f64) -> f64 {
    assert!(k <= n);
    let zeros = laguerre_half_zero_table(n - k);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * zeros[(n - k) as usize] * (alpha / beta).powi(2 * k as i32)
}

/// The same coefficient from its unsimplified double-sum form (a nested sum
/// over Γ-regularized terminating hypergeometric values); used to certify
/// the simplification numerically.
///
/// The `1/(2k-s)!` factor of each term combines with the hypergeometric
/// value of denominator parameter `2k-s+1` into the regularized function, so
/// terms with `2k < s` contribute through the pole-zero cancellation rather
/// than vanishing.
pub fn laguerre_expansion_coeff_double_sum(n: u32, k: u32, alpha: f64, beta: f64) -> f64 {
    assert!(k <= n);
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let fact: Vec<f64> = {
        let mut v = vec![1.0f64];
        for i in 1..=(2 * n as usize) {
            v.push(v[i - 1] * i as f64);
        }
        v
    };
    let mut inner = 0.0f64;
    for s in 0..=n {
        let su = s as usize;
        let hyp = hyp2f1_regularized(
            (2 * n - s + 1) as i64,
            s,
            (2 * k as i64) - (s as i64) + 1,
            1.0 / (2.0 * b2),
        );
        inner += fact[2 * n as usize - su] / (fact[su] * fact[n as usize - su])
            * (4.0 * a2).powi(s as i32)
            * (a2 / b2 - 1.0).powi((n - s) as i32)
            * hyp;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let front = sign / 4.0f64.powi(n as i32) * fact[k as usize] / fact[(n - k) as usize]
        * (4.0 * a2).powi(k as i32)
        * b2.powi((n - k) as i32)
        / (2.0 * a2 * b2).powi(n as i32);
    front * inner
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(lambda: f64, phi: f64) -> SqueezeFrame {
        SqueezeFrame::new(lambda, phi).unwrap()
    }

    #[test]
    fn unsqueezed_marginal_values() {
        assert_eq!(marginal_q_unsqueezed(0, 0.0), 1.0);
        // One photon at the origin: L_1^{(-1/2)}(0) = 1/2.
        assert_eq!(marginal_q_unsqueezed(1, 0.0), 0.5);
        // n = 1: e^{-q²/2}(1 + q²)/2.
        let q = 1.3f64;
        let want = (-q * q / 2.0).exp() * (1.0 + q * q) / 2.0;
        assert!((marginal_q_unsqueezed(1, q) - want).abs() < 1e-15);
    }

    #[test]
    fn squeezed_marginal_reduces_to_unsqueezed_at_unit_lambda() {
        for n in 0..=8u32 {
            for &q in &[0.0, 0.7, -2.2, 4.0] {
                let s = marginal_q(n, q, &frame(1.0, 0.0));
                let want = marginal_q_unsqueezed(n, q);
                assert!(
                    (s.value - want).abs() <= 1e-13 * want.max(1e-30),
                    "n={n} q={q}: {} vs {want}",
                    s.value
                );
                assert!(s.flags.singular_fallback);
            }
        }
        assert_eq!(marginal_q(0, 0.0, &frame(1.0, 0.0)).value, 1.0);
        assert_eq!(marginal_q(1, 0.0, &frame(1.0, 0.0)).value, 0.5);
    }

    #[test]
    fn marginal_p_is_reciprocal_marginal_q() {
        // Exact by construction; spot-check a value and the λ=1 fixed point.
        let s = marginal_p(2, 1.3, &frame(5.0, 0.4));
        let q = marginal_q(2, 1.3, &frame(0.2, 0.4));
        assert_eq!(s.value, q.value);
        let s = marginal_p(1, 0.5, &frame(1.0, 0.0));
        assert_eq!(s.value, marginal_q_unsqueezed(1, 0.5));
    }

    #[test]
    fn marginal_p_prefactor_at_origin() {
        // R_0(0) = sqrt(2λ/((λ+1)[λ cos² + sin²])).
        for &(lambda, phi) in &[(4.0, 0.0), (0.3, 1.1), (21.0, 2.0)] {
            let f = frame(lambda, phi);
            let want =
                (2.0 * lambda / ((lambda + 1.0) * (lambda * f.cos2_half() + f.sin2_half()))).sqrt();
            let got = marginal_p(0, 0.0, &f).value;
            assert!((got - want).abs() <= 1e-14 * want, "λ={lambda} φ={phi}");
        }
    }

    #[test]
    fn direct_p_form_matches_reflection_route() {
        for n in 0..=10u32 {
            for &(p, lambda, phi) in &[
                (0.7, 4.0, 0.0),
                (1.3, 5.0, 0.4),
                (-2.0, 0.3, 2.1),
                (0.0, 21.0, 1.0),
            ] {
                let refl = marginal_p(n, p, &frame(lambda, phi)).value;
                let direct = marginal_p_direct(n, p, &frame(lambda, phi));
                let scale = refl.abs().max(direct.abs()).max(1e-30);
                assert!(
                    (refl - direct).abs() <= 1e-12 * scale,
                    "n={n} p={p} λ={lambda} φ={phi}: {refl} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn hermite_form_vacuum() {
        // n=0, q=1, λ=4, φ=0: sqrt(8/5) e^{-4/5}.
        let v = marginal_q_hermite_form(0, 1.0, &frame(4.0, 0.0)).unwrap();
        let want = (8.0f64 / 5.0).sqrt() * (-0.8f64).exp();
        assert!((v - want).abs() < 1e-14);
    }

    #[test]
    fn hermite_form_matches_laguerre_form_inside_validity_region() {
        for n in 0..=12u32 {
            for &(q, lambda, phi) in &[
                (0.7, 3.0, 0.2),
                (0.0, 4.0, 0.0),
                (1.9, 1.7, 0.5),
                (-1.1, 0.6, 2.6), // cot²(φ/2) < λ < 1 branch
            ] {
                let f = frame(lambda, phi);
                let a6 = marginal_q_hermite_form(n, q, &f).unwrap();
                let eq34 = marginal_q(n, q, &f).value;
                let scale = a6.abs().max(eq34.abs()).max(1e-30);
                assert!(
                    (a6 - eq34).abs() <= 1e-9 * scale,
                    "n={n} q={q} λ={lambda} φ={phi}: {a6} vs {eq34}"
                );
            }
        }
    }

    #[test]
    fn hermite_form_refuses_outside_validity_region() {
        // λ > cot²(φ/2) makes β² negative.
        let err = marginal_q_hermite_form(2, 1.0, &frame(21.0, 2.0)).unwrap_err();
        assert!(matches!(err, Error::OutsideValidityRegion { .. }));
        // λ = 1 makes β² infinite.
        let err = marginal_q_hermite_form(2, 1.0, &frame(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OutsideValidityRegion { .. }));
    }

    #[test]
    fn expansion_coeff_closed_form() {
        assert_eq!(laguerre_expansion_coeff(0, 0, 1.0, 2.0), 1.0);
        // n=1, k=0: 1!!/2!! = 1/2 with sign (+).
        assert_eq!(laguerre_expansion_coeff(1, 0, 0.7, 1.9), 0.5);
        // n=2, k=1, α=1, β=2: (-1)(1/2)(1/4) = -1/8.
        assert_eq!(laguerre_expansion_coeff(2, 1, 1.0, 2.0), -0.125);
    }

    #[test]
    fn expansion_coeff_double_sum_matches_closed_form() {
        // The reduction holds on the constraint manifold α² = β²/(2β²-1)
        // (equivalently α² + β² = 2 α² β²), with β² > 1/2.
        for &b2 in &[0.8, 1.1, 2.0, 3.5] {
            let beta = f64::sqrt(b2);
            let alpha = f64::sqrt(b2 / (2.0 * b2 - 1.0));
            for n in 0..=8u32 {
                for k in 0..=n {
                    let closed = laguerre_expansion_coeff(n, k, alpha, beta);
                    let sum = laguerre_expansion_coeff_double_sum(n, k, alpha, beta);
                    let scale = closed.abs().max(sum.abs()).max(1e-12);
                    assert!(
                        (closed - sum).abs() <= 1e-10 * scale,
                        "n={n} k={k} β²={b2}: {closed} vs {sum}"
                    );
                }
            }
        }
    }

    #[test]
    fn marginal_is_nonnegative_on_a_grid() {
        for n in [0u32, 1, 3, 7, 20] {
            for &lambda in &[0.05, 0.5, 1.0, 4.0, 201.0] {
                for &phi in &[0.0, 0.9, 1.48, 2.8] {
                    for &q in &[-6.0, -1.0, 0.0, 0.4, 3.0, 12.0] {
                        let v = marginal_q(n, q, &frame(lambda, phi)).value;
                        assert!(v >= 0.0, "n={n} λ={lambda} φ={phi} q={q}: {v}");
                    }
                }
            }
        }
    }
}
