//! Machine checks of the combinatorial identity chain behind the
//! Hermite-product marginal form.
//!
//! The chain rewrites a sum of Hermite products `H_s(βq) H_{2n-s}(αq)` as a
//! half-order Laguerre series. It holds on the width-constraint manifold
//! `α² + β² = 2 α² β²` (equivalently `α² = β²/(2β²-1)`, which is why β² must
//! exceed 1/2); the product expansion lands on even orders there, where
//! `H_{2k}(u) = (-1)^k 2^{2k} k! L_k^{(-1/2)}(u²)` applies.

use crate::marginals::{laguerre_expansion_coeff, laguerre_expansion_coeff_double_sum};
use crate::oracle::report::CheckResult;
use crate::specfun::{
    binomial_row, hermite_ladder_real, hyp2f1_regularized, laguerre_half, ScaledReal,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Relative tolerance of every identity check in the suite.
pub const IDENTITY_TOL: f64 = 1e-10;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-30)
}

/// Bailey-type expansion of one Hermite product into even-order Hermite
/// polynomials of the combined argument, expressed through half-order
/// Laguerre values: the right-hand side of the product identity for
/// `H_s(βq) H_{2n-s}(αq)` on the constraint manifold. The `1/(2k-s)!` factor
/// is folded with the hypergeometric value into its Γ-regularized form, so
/// every `k = 0..=n` contributes.
fn hermite_product_expansion(n: u32, s: u32, alpha: f64, beta: f64, q: f64) -> f64 {
    let arg = 2.0 * (alpha * beta * q) * (alpha * beta * q);
    let fact: Vec<f64> = {
        let mut v = vec![1.0f64];
        for i in 1..=(2 * n as usize) {
            v.push(v[i - 1] * i as f64);
        }
        v
    };
    let mut sum = 0.0f64;
    for k in 0..=n {
        let hyp = hyp2f1_regularized(
            (2 * n - s + 1) as i64,
            s,
            (2 * k as i64) - (s as i64) + 1,
            1.0 / (2.0 * beta * beta),
        );
        sum += fact[k as usize] / fact[(n - k) as usize]
            * (2.0 * alpha).powi(2 * k as i32)
            * (beta * beta).powi((n - k) as i32)
            * hyp
            * laguerre_half(k, arg).to_f64();
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * fact[(2 * n - s) as usize]
        / (f64::powi(2.0, (n - s) as i32) * (alpha * beta).powi((2 * n - s) as i32))
        * sum
}

/// Left side of the series-equality identity: the normalized Hermite-product
/// sum `(1/(2^{2n} n!)) Σ_s L_{n-s}^{(s)}(0) (2α/β)^s (α²/β²-1)^{n-s}
/// H_s(βq) H_{2n-s}(αq)`.
fn hermite_product_series(n: u32, alpha: f64, beta: f64, q: f64) -> f64 {
    let hb = hermite_ladder_real(n, beta * q);
    let ha = hermite_ladder_real(2 * n, alpha * q);
    let binom = binomial_row(n);
    let ratio = alpha * alpha / (beta * beta) - 1.0;
    let mut sum = ScaledReal::ZERO;
    for s in 0..=n as usize {
        let coeff =
            binom[s] * (2.0 * alpha / beta).powi(s as i32) * ratio.powi(n as i32 - s as i32);
        sum = sum + (hb[s] * ha[2 * n as usize - s]).mul_f64(coeff);
    }
    let fact = ScaledReal::factorial(n);
    sum.mul_f64(fact.mantissa().recip())
        .scale_exp2(-fact.exponent() - 2 * n as i64)
        .to_f64()
}

/// Right side of the series equality: `Σ_k c_nk L_k^{(-1/2)}(2(αβq)²)`.
fn laguerre_series(n: u32, alpha: f64, beta: f64, q: f64) -> f64 {
    let arg = 2.0 * (alpha * beta * q) * (alpha * beta * q);
    (0..=n)
        .map(|k| laguerre_expansion_coeff(n, k, alpha, beta) * laguerre_half(k, arg).to_f64())
        .sum()
}

/// Explicit alternating-factorial reduction of the regularized terminating
/// hypergeometric value (the independent right side of that identity):
/// `(s!/(2n-s)!) Σ_l (-1)^l (2n-s+l)! / ((s-l)! (2k-s+l)! l!) (2β²)^{-l}`,
/// with `1/(negative)! = 0`.
fn hyp2f1_reduction(n: u32, s: u32, k: u32, beta_sq: f64) -> f64 {
    let fact: Vec<f64> = {
        let mut v = vec![1.0f64];
        for i in 1..=(2 * n as usize + s as usize) {
            v.push(v[i - 1] * i as f64);
        }
        v
    };
    let mut sum = 0.0f64;
    for l in 0..=s {
        let shifted = 2 * k as i64 - s as i64 + l as i64;
        if shifted < 0 {
            continue;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * fact[(2 * n - s + l) as usize]
            / (fact[(s - l) as usize] * fact[shifted as usize])
            * (2.0 * beta_sq).powi(-(l as i32))
            / fact[l as usize];
    }
    fact[s as usize] / fact[(2 * n - s) as usize] * sum
}

/// Runs the full identity chain for n ≤ `n_max` over `draws` seeded random
/// parameter draws on the constraint manifold (β² > 1/2, α² = β²/(2β²-1)).
pub fn identity_suite_with(n_max: u32, draws: u32, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for draw in 0..draws {
        let beta_sq: f64 = rng.gen_range(0.55..4.0);
        let beta = beta_sq.sqrt();
        let alpha = (beta_sq / (2.0 * beta_sq - 1.0)).sqrt();
        let q: f64 = rng.gen_range(-3.0..3.0);
        for n in 0..=n_max {
            // (a) product expansion for every s
            let mut worst_a = 0.0f64;
            for s in 0..=n {
                let hb = hermite_ladder_real(s, beta * q);
                let ha = hermite_ladder_real(2 * n - s, alpha * q);
                let lhs = (hb[s as usize] * ha[(2 * n - s) as usize]).to_f64();
                let rhs = hermite_product_expansion(n, s, alpha, beta, q);
                worst_a = worst_a.max(rel_err(lhs, rhs));
            }
            out.push(CheckResult::measured(
                format!("identities/product-expansion n={n} draw={draw}"),
                worst_a,
                IDENTITY_TOL,
            ));
            // (b) terminating-hypergeometric reduction (regularized form)
            let mut worst_b = 0.0f64;
            for s in 0..=n {
                for k in 0..=n {
                    let direct = hyp2f1_regularized(
                        (2 * n - s + 1) as i64,
                        s,
                        (2 * k as i64) - (s as i64) + 1,
                        1.0 / (2.0 * beta_sq),
                    );
                    let reduced = hyp2f1_reduction(n, s, k, beta_sq);
                    worst_b = worst_b.max(rel_err(direct, reduced));
                }
            }
            out.push(CheckResult::measured(
                format!("identities/hypergeometric-reduction n={n} draw={draw}"),
                worst_b,
                IDENTITY_TOL,
            ));
            // (c) double-sum coefficients equal the closed form
            let mut worst_c = 0.0f64;
            for k in 0..=n {
                let closed = laguerre_expansion_coeff(n, k, alpha, beta);
                let summed = laguerre_expansion_coeff_double_sum(n, k, alpha, beta);
                worst_c = worst_c.max(rel_err(closed, summed));
            }
            out.push(CheckResult::measured(
                format!("identities/coefficient-reduction n={n} draw={draw}"),
                worst_c,
                IDENTITY_TOL,
            ));
            // (d) full series equality with closed-form coefficients
            let lhs = hermite_product_series(n, alpha, beta, q);
            let rhs = laguerre_series(n, alpha, beta, q);
            out.push(CheckResult::measured(
                format!("identities/series-equality n={n} draw={draw}"),
                rel_err(lhs, rhs),
                IDENTITY_TOL,
            ));
        }
    }
    out
}

/// The default identity suite: n ≤ 8, three seeded draws.
pub fn identity_suite() -> Vec<CheckResult> {
    identity_suite_with(8, 3, 0x6873_7175_657a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_is_trivial() {
        let results = identity_suite_with(0, 1, 7);
        assert!(results.iter().all(|r| r.pass), "{results:?}");
    }

    #[test]
    fn order_one_hand_check() {
        // α, β on the constraint manifold with β = 2: α² = 4/7.
        let beta = 2.0f64;
        let alpha = (4.0f64 / 7.0).sqrt();
        let q = 0.3;
        let lhs = hermite_product_series(1, alpha, beta, q);
        let rhs = laguerre_series(1, alpha, beta, q);
        assert!(rel_err(lhs, rhs) < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn full_suite_passes() {
        let results = identity_suite();
        let failures: Vec<_> = results.iter().filter(|r| !r.pass).collect();
        assert!(failures.is_empty(), "failing checks: {failures:?}");
    }

    #[test]
    fn constraint_violation_breaks_the_chain() {
        // Off the manifold the series equality must NOT hold; this guards the
        // suite against vacuous passes.
        let lhs = hermite_product_series(2, 1.3, 2.0, 0.4);
        let rhs = laguerre_series(2, 1.3, 2.0, 0.4);
        assert!(rel_err(lhs, rhs) > 1e-6, "{lhs} vs {rhs}");
    }
}
