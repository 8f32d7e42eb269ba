//! Adaptive Gauss–Kronrod quadrature over symmetric boxes.
//!
//! A 15-point Kronrod rule with embedded 7-point Gauss estimate drives an
//! adaptive bisection of `[-L, L]`. The interval is seeded with a fixed
//! number of panels so that narrow off-center features cannot slip between
//! the nodes of a single coarse application of the rule.

use crate::error::Error;
use num_complex::Complex64;

/// Abscissae of the 15-point Kronrod rule on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Weights of the embedded 7-point Gauss rule (odd Kronrod abscissae).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

const INITIAL_PANELS: usize = 32;

/// Integration request: a symmetric box `[-L, L]`, mixed tolerances, and a
/// subdivision budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(half_width: f64, rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Self {
        assert!(half_width > 0.0 && rel_tol > 0.0 && abs_tol > 0.0);
        Self {
            half_width,
            rel_tol,
            abs_tol,
            max_subdivisions,
        }
    }
}

/// One application of the Gauss–Kronrod pair on `[a, b]`.
///
/// Returns the Kronrod estimate and the QUADPACK-style rescaled error bound.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut res_abs = kronrod.abs();
    let mut values = [0.0f64; 15];
    values[7] = f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[j] = f1;
        values[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }
    let result = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let round_floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && round_floor > err {
        err = round_floor;
    }
    (result, err)
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integral of `f` over `[-L, L]`.
///
/// Returns the estimate and its error bound; the bound is at or below the
/// requested tolerance on success. Fails with [`Error::NoConvergence`] when
/// the subdivision budget runs out first.
pub fn integrate_1d(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<(f64, f64), Error> {
    integrate_interval(&f, -spec.half_width, spec.half_width, spec)
}

/// Adaptive integral over an arbitrary interval `[a, b]` with the tolerances
/// and budget of `spec` (its `half_width` is ignored).
pub fn integrate_interval(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let mut panels: Vec<Panel> = Vec::with_capacity(INITIAL_PANELS + spec.max_subdivisions);
    let step = (b - a) / INITIAL_PANELS as f64;
    for i in 0..INITIAL_PANELS {
        let pa = a + step * i as f64;
        let pb = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + step * (i + 1) as f64
        };
        let (value, error) = gk15(f, pa, pb);
        panels.push(Panel {
            a: pa,
            b: pb,
            value,
            error,
        });
    }
    let mut total: f64 = panels.iter().map(|p| p.value).sum();
    let mut total_err: f64 = panels.iter().map(|p| p.error).sum();
    for _ in 0..spec.max_subdivisions {
        if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok((total, total_err));
        }
        // Bisect the panel with the largest error (first on ties).
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(ia, pa), (ib, pb)| pa.error.partial_cmp(&pb.error).unwrap().then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .expect("panel list is nonempty");
        let Panel {
            a: pa,
            b: pb,
            value,
            error,
        } = panels[worst];
        let mid = 0.5 * (pa + pb);
        let (v1, e1) = gk15(f, pa, mid);
        let (v2, e2) = gk15(f, mid, pb);
        panels[worst] = Panel {
            a: pa,
            b: mid,
            value: v1,
            error: e1,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: v2,
            error: e2,
        });
        total += v1 + v2 - value;
        total_err += e1 + e2 - error;
    }
    if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
        Ok((total, total_err))
    } else {
        Err(Error::NoConvergence {
            value: total,
            err_est: total_err,
        })
    }
}

/// Iterated adaptive integral of `f(x, y)` over `[-L, L]²`.
///
/// The inner integral runs at a tenth of the requested relative tolerance;
/// the reported error combines the outer bound with the inner budget.
pub fn integrate_2d(
    f: impl Fn(f64, f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let inner_spec = QuadratureSpec {
        half_width: spec.half_width,
        rel_tol: spec.rel_tol / 10.0,
        abs_tol: spec.abs_tol / (8.0 * spec.half_width),
        max_subdivisions: spec.max_subdivisions,
    };
    let outer_spec = QuadratureSpec {
        half_width: spec.half_width,
        rel_tol: spec.rel_tol / 2.0,
        abs_tol: spec.abs_tol / 2.0,
        max_subdivisions: spec.max_subdivisions,
    };
    // Inner failures surface through a poisoned value rather than a panic;
    // rechecked below.
    let poisoned = std::cell::Cell::new(false);
    let g = |x: f64| match integrate_1d(|y| f(x, y), &inner_spec) {
        Ok((v, _)) => v,
        Err(_) => {
            poisoned.set(true);
            f64::NAN
        }
    };
    let (value, outer_err) = integrate_1d(g, &outer_spec)?;
    if poisoned.get() || value.is_nan() {
        return Err(Error::NoConvergence {
            value,
            err_est: f64::INFINITY,
        });
    }
    Ok((
        value,
        outer_err + 2.0 * spec.half_width * inner_spec.abs_tol,
    ))
}

/// Iterated adaptive integral of a complex integrand whose exact value is
/// real: real and imaginary parts are integrated separately, and the
/// imaginary part must vanish within ten error bounds of the request.
pub fn integrate_2d_complex(
    f: impl Fn(f64, f64) -> Complex64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), Error> {
    let (re, re_err) = integrate_2d(|x, y| f(x, y).re, spec)?;
    let (im, im_err) = integrate_2d(|x, y| f(x, y).im, spec)?;
    let bound = 10.0 * spec.abs_tol.max(spec.rel_tol * re.abs()).max(im_err);
    if im.abs() > bound {
        return Err(Error::ImaginaryResidual { residual: im });
    }
    Ok((re, re_err + im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: f64) -> QuadratureSpec {
        QuadratureSpec::new(l, 1e-12, 1e-12, 2000)
    }

    #[test]
    fn normalized_gaussian() {
        let inv = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let (v, e) = integrate_1d(|x| inv * (-0.5 * x * x).exp(), &spec(12.0)).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "v = {v}, err = {e}");
        assert!(e <= 1e-12f64.max(1e-12 * v.abs()));
    }

    #[test]
    fn odd_integrand_cancels() {
        // The exact value is 0; the rounding floor of the error estimator
        // sets the attainable absolute tolerance.
        let s = QuadratureSpec::new(5.0, 1e-12, 1e-9, 2000);
        let (v, _) = integrate_1d(|x| x * (-x * x).exp() + x.powi(3), &s).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn narrow_offcenter_bump_is_found() {
        // A Gaussian of width 0.5 centered at 80 inside [-100, 100].
        let f = |x: f64| (-(x - 80.0) * (x - 80.0) / 0.5).exp();
        let (v, _) = integrate_1d(f, &spec(100.0)).unwrap();
        let want = (0.5 * std::f64::consts::PI).sqrt();
        assert!((v - want).abs() < 1e-9 * want, "v = {v}, want = {want}");
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tight = QuadratureSpec::new(10.0, 1e-14, 1e-16, 1);
        let err = integrate_1d(|x| 1.0 / (1e-4 + x * x), &tight).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }

    #[test]
    fn two_dimensional_gaussian() {
        let inv = 1.0 / (2.0 * std::f64::consts::PI);
        let s = QuadratureSpec::new(10.0, 1e-9, 1e-9, 400);
        let (v, _) = integrate_2d(|x, y| inv * (-0.5 * (x * x + y * y)).exp(), &s).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn error_estimates_are_sound_under_tightening() {
        let f = |x: f64| (x.sin() + 1.2) * (-0.3 * x * x).exp();
        let loose = QuadratureSpec::new(8.0, 1e-6, 1e-8, 400);
        let tight = QuadratureSpec::new(8.0, 5e-7, 1e-8, 800);
        let (v1, e1) = integrate_1d(f, &loose).unwrap();
        let (v2, _) = integrate_1d(f, &tight).unwrap();
        assert!(
            (v1 - v2).abs() <= e1,
            "drift {} vs bound {e1}",
            (v1 - v2).abs()
        );
    }

    #[test]
    fn complex_route_checks_the_imaginary_part() {
        let s = QuadratureSpec::new(8.0, 1e-8, 1e-9, 800);
        // e^{i x y} against a Gaussian: the imaginary part is odd in (x, y).
        let f = |x: f64, y: f64| {
            Complex64::new(0.0, x * y).exp() * (-0.5 * (x * x + y * y)).exp()
                / (2.0 * std::f64::consts::PI)
        };
        let (v, _) = integrate_2d_complex(f, &s).unwrap();
        // ∫∫ cos(xy) e^{-(x²+y²)/2} dx dy / 2π = 1/√2.
        assert!((v - 0.5f64.sqrt()).abs() < 1e-7, "v = {v}");
        // A genuinely complex-valued integral is refused.
        let g = |x: f64, y: f64| {
            Complex64::new(0.0, 1.0 + x * 0.0 + y * 0.0) * (-0.5 * (x * x + y * y)).exp()
        };
        assert!(matches!(
            integrate_2d_complex(g, &s),
            Err(Error::ImaginaryResidual { .. })
        ));
    }

    #[test]
    fn interval_form_matches_shifted_box() {
        let f = |x: f64| (-(x - 3.0) * (x - 3.0)).exp();
        let (a, _) = integrate_interval(&f, -2.0, 8.0, &spec(1.0)).unwrap();
        let g = |u: f64| (-(u) * (u)).exp();
        let (b, _) = integrate_interval(&g, -5.0, 5.0, &spec(1.0)).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
