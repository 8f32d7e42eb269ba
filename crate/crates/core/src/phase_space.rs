//! Squeeze frames, phase points, and the Fock-state Husimi function.
//!
//! A frame is the pair (λ, φ): λ is the squeeze parameter playing the role
//! of time in the pseudo-diffusion picture, φ a phase-space rotation angle.
//! The Husimi function is evaluated through a complex Hermite form with
//! scaled prefactors, routed through the exact reciprocal symmetry
//! `P(p,q;λ,φ) = P(q,p;λ⁻¹,−φ)` for λ < 1 and through an equivalent Laguerre
//! form on the singular manifold λ ≈ 1.

use crate::error::Error;
use crate::specfun::{
    hermite_scaled, laguerre_half_scaled_ladder, HermiteLadderComplex, ScaledReal,
};
use num_complex::Complex64;
use std::fmt;
use std::ops::Mul;

/// |λ - 1| below this routes evaluation through the λ-regular Laguerre form.
pub const SINGULAR_LAMBDA_TOL: f64 = 1e-6;

/// Squeeze parameter and rotation angle, with cached half-angle trig.
#[derive(Clone, Copy, Debug)]
pub struct SqueezeFrame {
    lambda: f64,
    phi: f64,
    cos_half: f64,
    sin_half: f64,
}

impl PartialEq for SqueezeFrame {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda && self.phi == other.phi
    }
}

impl SqueezeFrame {
    /// λ must be finite and strictly positive; φ is in radians.
    pub fn new(lambda: f64, phi: f64) -> Result<Self, Error> {
        if !(lambda.is_finite() && lambda > 0.0) || !phi.is_finite() {
            return Err(Error::InvalidFrame { lambda });
        }
        let half = 0.5 * phi;
        Ok(Self {
            lambda,
            phi,
            cos_half: half.cos(),
            sin_half: half.sin(),
        })
    }

    pub fn from_degrees(lambda: f64, phi_deg: f64) -> Result<Self, Error> {
        Self::new(lambda, phi_deg.to_radians())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos_half(&self) -> f64 {
        self.cos_half
    }

    pub fn sin_half(&self) -> f64 {
        self.sin_half
    }

    /// cos²(φ/2)
    pub fn cos2_half(&self) -> f64 {
        self.cos_half * self.cos_half
    }

    /// sin²(φ/2)
    pub fn sin2_half(&self) -> f64 {
        self.sin_half * self.sin_half
    }

    /// sin φ, derived from the cached half-angle values so the kernel
    /// factorization identities hold to rounding.
    pub fn sin_phi(&self) -> f64 {
        2.0 * self.sin_half * self.cos_half
    }

    /// Same rotation angle, reciprocal squeeze parameter.
    pub fn recip_lambda(&self) -> Self {
        Self::new(1.0 / self.lambda, self.phi).expect("reciprocal of a valid frame is valid")
    }

    /// Same squeeze parameter, negated rotation angle.
    pub fn neg_phi(&self) -> Self {
        Self::new(self.lambda, -self.phi).expect("negated angle of a valid frame is valid")
    }

    /// Same squeeze parameter, different rotation angle.
    pub fn with_phi(&self, phi: f64) -> Result<Self, Error> {
        Self::new(self.lambda, phi)
    }
}

/// A point (p, q) in phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub p: f64,
    pub q: f64,
}

impl PhasePoint {
    pub fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    /// The transposed point (q, p), used by the reciprocal symmetry.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }
}

/// The image of a phase point under the frame rotation by φ/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotatedPoint {
    pub p_r: f64,
    pub q_r: f64,
}

/// q_r = q cos(φ/2) + p sin(φ/2), p_r = p cos(φ/2) - q sin(φ/2).
pub fn rotate(point: PhasePoint, frame: &SqueezeFrame) -> RotatedPoint {
    RotatedPoint {
        p_r: point.p * frame.cos_half - point.q * frame.sin_half,
        q_r: point.q * frame.cos_half + point.p * frame.sin_half,
    }
}

/// Which distribution a sample belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    Husimi,
    MarginalQ,
    MarginalP,
    CorrTotal,
    CorrC1,
    CorrC2,
    CorrC3,
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Husimi => "Husimi",
            Self::MarginalQ => "MarginalQ",
            Self::MarginalP => "MarginalP",
            Self::CorrTotal => "CorrTotal",
            Self::CorrC1 => "CorrC1",
            Self::CorrC2 => "CorrC2",
            Self::CorrC3 => "CorrC3",
        };
        f.write_str(s)
    }
}

/// Diagnostic flags attached to an evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    /// A singular-manifold fallback path was taken.
    pub singular_fallback: bool,
    /// The λ ↔ λ⁻¹ reciprocal symmetry rerouted the evaluation.
    pub reciprocal_symmetry: bool,
    /// An infinite series was cut off at its term cap.
    pub truncated_series: bool,
}

impl Flags {
    pub fn is_empty(&self) -> bool {
        !(self.singular_fallback || self.reciprocal_symmetry || self.truncated_series)
    }

    pub fn union(&self, other: &Flags) -> Flags {
        Flags {
            singular_fallback: self.singular_fallback || other.singular_fallback,
            reciprocal_symmetry: self.reciprocal_symmetry || other.reciprocal_symmetry,
            truncated_series: self.truncated_series || other.truncated_series,
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.singular_fallback {
            out.push("singular_fallback");
        }
        if self.reciprocal_symmetry {
            out.push("reciprocal_symmetry");
        }
        if self.truncated_series {
            out.push("truncated_series");
        }
        out
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(";"))
    }
}

/// A tagged evaluation record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistributionSample {
    pub kind: DistributionKind,
    pub n: u32,
    pub frame: SqueezeFrame,
    pub point: PhasePoint,
    pub value: f64,
    pub flags: Flags,
}

/// Poisson form of the unsqueezed Husimi function,
/// `P_n(p,q) = (1/n!) ((p²+q²)/2)^n exp(-(p²+q²)/2)`.
pub fn husimi_unsqueezed(n: u32, point: PhasePoint) -> f64 {
    let energy = 0.5 * (point.p * point.p + point.q * point.q);
    if energy == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let num = ScaledReal::pow_f64(energy, n);
    let den = ScaledReal::factorial(n);
    (num * ScaledReal::from_exp(-energy))
        .mul_f64(den.mantissa().recip())
        .scale_exp2(-den.exponent())
        .to_f64()
}

/// Fock-state Husimi function in the squeezed representation.
///
/// For λ > 1 the complex Hermite closed form is evaluated directly with all
/// prefactors combined in scaled arithmetic; λ < 1 is rerouted through the
/// reciprocal symmetry so the Hermite argument stays real-branched, and
/// |λ - 1| < [`SINGULAR_LAMBDA_TOL`] falls back to the Laguerre form which is
/// regular there.
pub fn husimi_fock(n: u32, point: PhasePoint, frame: &SqueezeFrame) -> DistributionSample {
    let (value, flags) = husimi_fock_value(n, point, frame);
    DistributionSample {
        kind: DistributionKind::Husimi,
        n,
        frame: *frame,
        point,
        value,
        flags,
    }
}

fn husimi_fock_value(n: u32, point: PhasePoint, frame: &SqueezeFrame) -> (f64, Flags) {
    let lambda = frame.lambda();
    if (lambda - 1.0).abs() < SINGULAR_LAMBDA_TOL {
        let value = husimi_fock_laguerre(n, point, frame);
        return (
            value,
            Flags {
                singular_fallback: true,
                ..Flags::default()
            },
        );
    }
    if lambda < 1.0 {
        // P(p,q;λ,φ) = P(q,p;λ⁻¹,-φ)
        let mirrored = frame.recip_lambda().neg_phi();
        let (value, inner) = husimi_fock_value(n, point.swapped(), &mirrored);
        return (
            value,
            Flags {
                reciprocal_symmetry: true,
                ..inner
            },
        );
    }
    let rp = rotate(point, frame);
    let root = (lambda * lambda - 1.0).sqrt();
    let z = Complex64::new(lambda * rp.q_r / root, rp.p_r / root);
    let h2 = hermite_scaled(n, z).norm_sqr();
    let value = (husimi_prefactor(n, lambda, &rp) * h2).to_f64();
    (value.max(0.0), Flags::default())
}

/// Shared scaled prefactor of the two closed forms:
/// `(2 sqrt(λ)/(λ+1)) ((λ-1)/(λ+1))^n / (2^n n!) exp(-(λ q_r² + p_r²)/(λ+1))`
/// with the `2^n n!` divisor folded in only on the Hermite route (callers of
/// the Laguerre route pass through [`husimi_fock_laguerre`] instead).
fn husimi_prefactor(n: u32, lambda: f64, rp: &RotatedPoint) -> ScaledReal {
    let gauss = -(lambda * rp.q_r * rp.q_r + rp.p_r * rp.p_r) / (lambda + 1.0);
    let fact = ScaledReal::factorial(n);
    ScaledReal::from_f64(2.0 * lambda.sqrt() / (lambda + 1.0))
        .mul(ScaledReal::pow_f64((lambda - 1.0) / (lambda + 1.0), n))
        .mul(ScaledReal::from_exp(gauss))
        .mul_f64(fact.mantissa().recip())
        .scale_exp2(-fact.exponent() - n as i64)
}

/// Laguerre-pair closed form of the Fock-state Husimi function.
///
/// Each term folds one power of `(λ-1)/(λ+1)` into a scaled half-order
/// Laguerre factor, so the expression is a polynomial in λ-regular quantities
/// and evaluates for every λ > 0 (both λ ≶ 1 and the λ = 1 manifold) without
/// branch choices. Mathematically equal to [`husimi_fock`].
pub fn husimi_fock_laguerre(n: u32, point: PhasePoint, frame: &SqueezeFrame) -> f64 {
    let lambda = frame.lambda();
    let rp = rotate(point, frame);
    let lp1 = lambda + 1.0;
    let s = (lambda - 1.0) / lp1;
    let x_q = 2.0 * lambda * lambda * rp.q_r * rp.q_r / (lp1 * lp1);
    let x_p = -2.0 * rp.p_r * rp.p_r / (lp1 * lp1);
    let u_q = laguerre_half_scaled_ladder(n, s, x_q);
    let u_p = laguerre_half_scaled_ladder(n, s, x_p);
    let mut sum = ScaledReal::ZERO;
    let mut sign = 1.0f64;
    for k in 0..=n as usize {
        sum = sum + (u_q[k] * u_p[n as usize - k]).mul_f64(sign);
        sign = -sign;
    }
    let gauss = -(lambda * rp.q_r * rp.q_r + rp.p_r * rp.p_r) / lp1;
    let pref = ScaledReal::from_f64(2.0 * lambda.sqrt() / lp1) * ScaledReal::from_exp(gauss);
    (pref * sum).to_f64().max(0.0)
}

/// Partial sum `Σ_{n<=n_max} P_n(p,q;λ,φ)`; monotone in `n_max` and → 1.
pub fn husimi_sum_over_n(point: PhasePoint, frame: &SqueezeFrame, n_max: u32) -> f64 {
    let lambda = frame.lambda();
    if (lambda - 1.0).abs() < SINGULAR_LAMBDA_TOL {
        // Poisson partial sums at the rotated point.
        let rp = rotate(point, frame);
        let energy = 0.5 * (rp.p_r * rp.p_r + rp.q_r * rp.q_r);
        let mut term = ScaledReal::from_exp(-energy);
        let mut sum = term;
        for n in 0..n_max {
            term = term.mul_f64(energy / (n + 1) as f64);
            sum = sum + term;
        }
        return sum.to_f64();
    }
    if lambda < 1.0 {
        let mirrored = frame.recip_lambda().neg_phi();
        return husimi_sum_over_n(point.swapped(), &mirrored, n_max);
    }
    let rp = rotate(point, frame);
    let root = (lambda * lambda - 1.0).sqrt();
    let z = Complex64::new(lambda * rp.q_r / root, rp.p_r / root);
    let gauss = -(lambda * rp.q_r * rp.q_r + rp.p_r * rp.p_r) / (lambda + 1.0);
    let ratio = (lambda - 1.0) / (lambda + 1.0);
    let mut pref =
        ScaledReal::from_f64(2.0 * lambda.sqrt() / (lambda + 1.0)) * ScaledReal::from_exp(gauss);
    let mut ladder = HermiteLadderComplex::new(z);
    let mut sum = ScaledReal::ZERO;
    for n in 0..=n_max {
        if n > 0 {
            pref = pref.mul_f64(ratio / (2.0 * n as f64));
        }
        sum = sum + pref * ladder.next_value().norm_sqr();
    }
    sum.to_f64()
}
