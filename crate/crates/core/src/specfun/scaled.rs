//! Power-of-two scaled floating-point carriers.
//!
//! A `ScaledReal` stores `mantissa * 2^exponent` with the mantissa kept in
//! `[1, 2)` (or exactly zero). Rescaling by powers of two is exact, so the
//! representation carries the huge and tiny intermediates of high-order
//! polynomial recurrences without any log-domain rounding.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::f64::consts::LN_2;
use std::ops::{Add, Mul, Neg, Sub};

const EXP_MASK: u64 = 0x7ff0_0000_0000_0000;
const SIGN_MANT_MASK: u64 = !EXP_MASK;

/// Splits a finite nonzero `x` into `(m, e)` with `x = m * 2^e`, `|m| in [1, 2)`.
fn split(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // Subnormal: promote to the normal range first (exact).
        let promoted = x * f64::powi(2.0, 540);
        let (m, e) = split(promoted);
        (m, e - 540)
    } else {
        let m = f64::from_bits((bits & SIGN_MANT_MASK) | (1023u64 << 52));
        (m, raw_exp - 1023)
    }
}

/// Computes `m * 2^e`, saturating to `0` or `±inf` outside the f64 range.
fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    if e > 1100 {
        return if m > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
    }
    if e < -1150 {
        return 0.0;
    }
    let e1 = e.clamp(-1000, 1000) as i32;
    let e2 = (e - e1 as i64) as i32;
    m * f64::powi(2.0, e1) * f64::powi(2.0, e2)
}

/// A signed real number `mantissa * 2^exponent` with `|mantissa| in [1, 2)`
/// or exactly zero (with exponent zero).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledReal {
    mantissa: f64,
    exponent: i64,
}

impl ScaledReal {
    pub const ZERO: Self = Self {
        mantissa: 0.0,
        exponent: 0,
    };
    pub const ONE: Self = Self {
        mantissa: 1.0,
        exponent: 0,
    };

    /// Builds `value * 2^exponent`, normalizing the mantissa.
    pub fn new(value: f64, exponent: i64) -> Self {
        assert!(value.is_finite(), "ScaledReal requires finite input");
        if value == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = split(value);
        Self {
            mantissa: m,
            exponent: e + exponent,
        }
    }

    pub fn from_f64(value: f64) -> Self {
        Self::new(value, 0)
    }

    /// `e^x` without intermediate overflow; exact split of the exponent into
    /// an integer power of two and a bounded mantissa.
    pub fn from_exp(x: f64) -> Self {
        if x.abs() < 700.0 {
            return Self::from_f64(x.exp());
        }
        let e = (x / LN_2).floor();
        let m = (x - e * LN_2).exp();
        Self::new(m, e as i64)
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn to_f64(&self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn signum(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// Natural log of the absolute value; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().ln() + self.exponent as f64 * LN_2
        }
    }

    /// Compares absolute values without materializing them.
    pub fn abs_cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.exponent.cmp(&other.exponent).then_with(|| {
                self.mantissa
                    .abs()
                    .partial_cmp(&other.mantissa.abs())
                    .unwrap()
            }),
        }
    }

    pub fn mul_f64(&self, rhs: f64) -> Self {
        if self.is_zero() || rhs == 0.0 {
            return Self::ZERO;
        }
        Self::new(self.mantissa * rhs, self.exponent)
    }

    pub fn div_f64(&self, rhs: f64) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.mantissa / rhs, self.exponent)
    }

    /// Exact rescaling by `2^shift`.
    pub fn scale_exp2(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self {
            mantissa: self.mantissa,
            exponent: self.exponent + shift,
        }
    }

    /// `base^n` accumulated with exponent renormalization at every step.
    pub fn pow_f64(base: f64, n: u32) -> Self {
        let mut out = Self::ONE;
        for _ in 0..n {
            out = out.mul_f64(base);
            if out.is_zero() {
                return Self::ZERO;
            }
        }
        out
    }

    /// `n!` as a scaled value (exact renormalization, f64 rounding per step).
    pub fn factorial(n: u32) -> Self {
        let mut out = Self::ONE;
        for i in 1..=n {
            out = out.mul_f64(i as f64);
        }
        out
    }

    /// Ratio of this value to `other`, as an ordinary f64 (saturating).
    pub fn ratio(&self, other: &Self) -> f64 {
        if other.is_zero() {
            return f64::NAN;
        }
        if self.is_zero() {
            return 0.0;
        }
        ldexp(
            self.mantissa / other.mantissa,
            self.exponent - other.exponent,
        )
    }
}

impl Neg for ScaledReal {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Mul for ScaledReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Add for ScaledReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = lo.exponent - hi.exponent;
        if gap < -200 {
            return hi;
        }
        let m = hi.mantissa + ldexp(lo.mantissa, gap);
        if m == 0.0 {
            return Self::ZERO;
        }
        Self::new(m, hi.exponent)
    }
}

impl Sub for ScaledReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// A complex value `(re + i im) * 2^exponent` with a shared exponent and
/// `max(|re|, |im|) in [1, 2)` (or exactly zero).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledComplex {
    re: f64,
    im: f64,
    exponent: i64,
}

impl ScaledComplex {
    pub const ZERO: Self = Self {
        re: 0.0,
        im: 0.0,
        exponent: 0,
    };

    pub fn new(re: f64, im: f64, exponent: i64) -> Self {
        assert!(re.is_finite() && im.is_finite());
        let mag = re.abs().max(im.abs());
        if mag == 0.0 {
            return Self::ZERO;
        }
        let (_, e) = split(mag);
        // Shifting both parts by the same power of two is exact.
        let shift = f64::powi(2.0, (-e).clamp(-1060, 1060) as i32);
        Self {
            re: re * shift,
            im: im * shift,
            exponent: exponent + e,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0)
    }

    pub fn re(&self) -> ScaledReal {
        if self.re == 0.0 {
            ScaledReal::ZERO
        } else {
            ScaledReal::new(self.re, self.exponent)
        }
    }

    pub fn im(&self) -> ScaledReal {
        if self.im == 0.0 {
            ScaledReal::ZERO
        } else {
            ScaledReal::new(self.im, self.exponent)
        }
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ldexp(self.re, self.exponent), ldexp(self.im, self.exponent))
    }

    /// |z|² as a scaled real, computed from the stored fields.
    pub fn norm_sqr(&self) -> ScaledReal {
        let m = self.re * self.re + self.im * self.im;
        if m == 0.0 {
            return ScaledReal::ZERO;
        }
        ScaledReal::new(m, 2 * self.exponent)
    }

    pub fn mul_complex(&self, w: Complex64) -> Self {
        Self::new(
            self.re * w.re - self.im * w.im,
            self.re * w.im + self.im * w.re,
            self.exponent,
        )
    }

    pub fn mul_f64(&self, s: f64) -> Self {
        if s == 0.0 || self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.re * s, self.im * s, self.exponent)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return *self;
        }
        if self.is_zero() {
            return Self::new(-rhs.re, -rhs.im, rhs.exponent);
        }
        let (hi, lo, neg_lo) = if self.exponent >= rhs.exponent {
            (self, rhs, true)
        } else {
            (rhs, self, false)
        };
        let gap = lo.exponent - hi.exponent;
        if gap < -200 {
            return if neg_lo {
                *hi
            } else {
                Self::new(-hi.re, -hi.im, hi.exponent)
            };
        }
        let shift = f64::powi(2.0, gap as i32);
        let (lr, li) = (lo.re * shift, lo.im * shift);
        let (re, im) = if neg_lo {
            (hi.re - lr, hi.im - li)
        } else {
            (lr - hi.re, li - hi.im)
        };
        if re == 0.0 && im == 0.0 {
            return Self::ZERO;
        }
        Self::new(re, im, hi.exponent)
    }
}
