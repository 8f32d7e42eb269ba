//! Terminating Gauss hypergeometric sums with integer parameters.

use crate::error::Error;

/// `2F1(a, -s; c; x)` as the finite sum over `l = 0..=s` of
/// `(a)_l (-s)_l / ((c)_l l!) x^l`, with Pochhammer factors accumulated by
/// incremental multiplication (exact for integer parameters).
///
/// Fails with [`Error::DegenerateParameters`] when a denominator factor
/// `(c)_l` vanishes while the numerator is still nonzero.
pub fn hyp2f1_terminating(a: i64, s: u32, c: i64, x: f64) -> Result<f64, Error> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let neg_s = -(s as i64);
    for l in 0..s as i64 {
        let num = (a + l) * (neg_s + l);
        if num == 0 {
            // The series terminated early; remaining terms vanish.
            break;
        }
        let den = c + l;
        if den == 0 {
            return Err(Error::DegenerateParameters {
                index: l as u32 + 1,
            });
        }
        term *= num as f64 / (den * (l + 1)) as f64 * x;
        sum += term;
    }
    Ok(sum)
}

/// Γ-regularized terminating series `2F1(a, -s; c; x)/Γ(c)`, defined for
/// every integer `c`:
/// `Σ_{l=0}^{s} (a)_l (-s)_l x^l / (l! Γ(c+l))` with `1/Γ(c+l) = 0` for
/// nonpositive `c+l`.
///
/// For `c >= 1` this is the plain sum divided by `(c-1)!`; for `c <= 0` the
/// pole of the series against the zero of `1/Γ(c)` leaves the finite tail
/// starting at `l = 1-c`.
pub fn hyp2f1_regularized(a: i64, s: u32, c: i64, x: f64) -> f64 {
    let mut sum = 0.0f64;
    let mut poch = 1.0f64; // (a)_l (-s)_l x^l / l!
    let neg_s = -(s as i64);
    for l in 0..=s as i64 {
        if l > 0 {
            poch *= ((a + l - 1) * (neg_s + l - 1)) as f64 / l as f64 * x;
        }
        let shifted = c + l;
        if shifted >= 1 {
            let mut gamma = 1.0f64;
            for i in 2..shifted {
                gamma *= i as f64;
            }
            sum += poch / gamma;
        }
    }
    sum
}
