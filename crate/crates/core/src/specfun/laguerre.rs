//! Half-order associated Laguerre polynomials `L_k^{(-1/2)}`, their scaled
//! combination `s^k L_k^{(-1/2)}(x/s)`, and exact values at the origin.
//!
//! The scaled combination is the workhorse: as a bivariate polynomial in
//! `(s, x)` it is finite and continuous at `s = 0`, which is exactly what the
//! squeezed-state closed forms need on their singular manifolds.

use super::scaled::ScaledReal;
use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};

const BAND: f64 = 1.3407807929942597e154; // 2^512
const BAND_INV: f64 = 7.458340731200207e-155; // 2^-512

/// `L_k^{(-1/2)}(x)` by the standard three-term recurrence.
///
/// At `x = 0` the exact closed form `(2k-1)!!/(2k)!!` is returned instead, so
/// the origin value agrees bit-for-bit with [`laguerre_half_zero`].
pub fn laguerre_half(k: u32, x: f64) -> ScaledReal {
    assert!(x.is_finite());
    if x == 0.0 {
        return ScaledReal::from_f64(laguerre_half_zero_f64(k));
    }
    laguerre_half_scaled(k, 1.0, x)
}

/// `s^k L_k^{(-1/2)}(x/s)` evaluated as a bivariate polynomial in `(s, x)`.
///
/// Finite and continuous at `s = 0`, where it degenerates to the leading
/// term `(-x)^k / k!`.
pub fn laguerre_half_scaled(k: u32, s: f64, x: f64) -> ScaledReal {
    let ladder = laguerre_half_scaled_ladder(k, s, x);
    ladder[k as usize]
}

/// All of `s^j L_j^{(-1/2)}(x/s)` for `j = 0..=k_max`.
///
/// Multiplying the Laguerre recurrence by `s^{j+1}` gives
/// `u_{j+1} = [((2j + 1/2) s - x) u_j - (j - 1/2) s^2 u_{j-1}] / (j + 1)`,
/// which never forms the (possibly divergent) argument `x/s`.
pub fn laguerre_half_scaled_ladder(k_max: u32, s: f64, x: f64) -> Vec<ScaledReal> {
    assert!(s.is_finite() && x.is_finite());
    let mut out = Vec::with_capacity(k_max as usize + 1);
    let s2 = s * s;
    let mut prev = 0.0f64; // u_{j-1} mantissa
    let mut curr = 1.0f64; // u_j mantissa
    let mut exponent = 0i64;
    out.push(ScaledReal::ONE);
    for j in 0..k_max {
        let jf = j as f64;
        let next = (((2.0 * jf + 0.5) * s - x) * curr - (jf - 0.5) * s2 * prev) / (jf + 1.0);
        prev = curr;
        curr = next;
        let mag = curr.abs().max(prev.abs());
        if mag > BAND {
            curr *= BAND_INV;
            prev *= BAND_INV;
            exponent += 512;
        } else if mag < BAND_INV && mag > 0.0 {
            curr *= BAND;
            prev *= BAND;
            exponent -= 512;
        }
        out.push(if curr == 0.0 {
            ScaledReal::ZERO
        } else {
            ScaledReal::new(curr, exponent)
        });
    }
    out
}

/// `L_m^{(a)}(0) = C(m + a, m)` as an exact integer.
pub fn laguerre_general_zero(m: u32, a: u32) -> BigUint {
    binomial(m as u64 + a as u64, m as u64)
}

/// `C(n, k)` as an exact integer (stepwise-exact multiplicative form).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

/// `L_m^{(-1/2)}(0) = (2m-1)!!/(2m)!!` as an exact rational, with the
/// convention `(-1)!! = 0!! = 1`.
pub fn laguerre_half_zero(m: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=m as u64 {
        num *= BigInt::from(2 * j - 1);
        den *= BigInt::from(2 * j);
    }
    BigRational::new(num, den)
}

/// `L_m^{(-1/2)}(0)` rounded to f64 by the same path as the exact value.
pub fn laguerre_half_zero_f64(m: u32) -> f64 {
    laguerre_half_zero(m)
        .to_f64()
        .expect("double-factorial ratio is in (0, 1]")
}

/// Table of `L_j^{(-1/2)}(0)` for `j = 0..=m_max`, built incrementally.
pub fn laguerre_half_zero_table(m_max: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(m_max as usize + 1);
    let mut r = 1.0f64;
    out.push(r);
    for j in 1..=m_max as u64 {
        r *= (2 * j - 1) as f64 / (2 * j) as f64;
        out.push(r);
    }
    out
}

/// Row of binomial coefficients `C(n, 0..=n)` in f64.
pub fn binomial_row(n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0f64;
    out.push(c);
    for k in 0..n as u64 {
        c = c * (n as u64 - k) as f64 / (k + 1) as f64;
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term() {
        assert_eq!(laguerre_half(0, 17.3).to_f64(), 1.0);
        assert_eq!(laguerre_half_scaled(0, 0.0, 5.0).to_f64(), 1.0);
    }

    #[test]
    fn linear_at_origin() {
        // L_1^{(a)}(x) = 1 + a - x at a = -1/2.
        assert_eq!(laguerre_half(1, 0.0).to_f64(), 0.5);
    }

    #[test]
    fn quadratic_at_origin_from_series() {
        // Series definition gives L_2^{(-1/2)}(0) = 3/8; cross-checks the
        // double-factorial closed form.
        assert_eq!(laguerre_half(2, 0.0).to_f64(), 3.0 / 8.0);
        assert_eq!(laguerre_half_zero_f64(2), 3.0 / 8.0);
    }

    #[test]
    fn scaled_composition_example() {
        // 0.5 * L_1^{(-1/2)}(2) = 0.5 * (1/2 - 2) = -0.75.
        let v = laguerre_half_scaled(1, 0.5, 1.0).to_f64();
        assert!((v + 0.75).abs() < 1e-15);
    }

    #[test]
    fn degenerate_scale_leading_term() {
        // s -> 0 limit of s^2 L_2^{(-1/2)}(1/s): the x^2 coefficient of
        // L_2^{(-1/2)} is 1/2. Richardson check against small finite s.
        assert_eq!(laguerre_half_scaled(2, 0.0, 1.0).to_f64(), 0.5);
        let f = |s: f64| laguerre_half_scaled(2, s, 1.0).to_f64();
        let r1 = f(1e-6);
        let r2 = f(1e-8);
        let extrap = r2 + (r2 - r1) * 1e-8 / (1e-6 - 1e-8);
        assert!((extrap - 0.5).abs() < 1e-7);
    }

    #[test]
    fn general_zero_binomials() {
        assert_eq!(laguerre_general_zero(0, 7).to_f64().unwrap(), 1.0);
        // Series definition of L_2^{(1)} gives 3 at the origin.
        assert_eq!(laguerre_general_zero(2, 1).to_f64().unwrap(), 3.0);
        // C(5, 3) = 10.
        assert_eq!(laguerre_general_zero(3, 2).to_f64().unwrap(), 10.0);
    }

    #[test]
    fn half_zero_double_factorials() {
        assert_eq!(laguerre_half_zero_f64(0), 1.0);
        assert_eq!(laguerre_half_zero_f64(1), 0.5);
        // 5!!/6!! = 15/48 = 5/16.
        assert_eq!(laguerre_half_zero_f64(3), 5.0 / 16.0);
    }

    #[test]
    fn origin_value_is_exact_for_all_orders_up_to_100() {
        for k in 0..=100 {
            assert_eq!(
                laguerre_half(k, 0.0).to_f64(),
                laguerre_half_zero_f64(k),
                "k = {k}"
            );
        }
    }

    #[test]
    fn zero_table_matches_exact() {
        let table = laguerre_half_zero_table(60);
        for (j, &v) in table.iter().enumerate() {
            let exact = laguerre_half_zero(j as u32).to_f64().unwrap();
            assert!((v - exact).abs() <= 4.0 * f64::EPSILON * exact);
        }
    }

    #[test]
    fn scaled_matches_direct_composition() {
        for k in 0..=40u32 {
            for &(s, x) in &[
                (0.8, 3.0),
                (-0.4, 1.7),
                (1.0, -6.0),
                (0.001, 0.3),
                (2.5, -0.2),
            ] {
                let composed = laguerre_half_scaled(k, 1.0, x / s);
                let direct = laguerre_half_scaled(k, s, x);
                let want = composed.to_f64() * s.powi(k as i32);
                let got = direct.to_f64();
                let scale = want.abs().max(got.abs()).max(1e-280);
                assert!(
                    (got - want).abs() <= 1e-10 * scale,
                    "k={k} s={s} x={x}: {got} vs {want}"
                );
            }
        }
    }
}
