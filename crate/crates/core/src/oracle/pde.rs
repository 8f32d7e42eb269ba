//! Finite-difference residuals of the pseudo-diffusion equations.
//!
//! The Husimi function satisfies `Γ P = 0`, where Γ couples a first
//! derivative in λ to the three second derivatives in (p, q) with
//! angle-dependent coefficients, and each marginal satisfies the
//! corresponding reduced equation. The
//! residual of a centered discretization must vanish at second order in the
//! step size; the report carries a log-log regression estimate of that order.

use crate::error::Error;
use crate::marginals::{marginal_p, marginal_q};
use crate::phase_space::{husimi_fock, PhasePoint, SqueezeFrame};

/// Residuals of one stencil at a sweep of step sizes, with the convergence
/// order fitted by least squares over `log h` / `log |residual|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub step_sizes: Vec<f64>,
    pub residuals: Vec<f64>,
    pub estimated_order: f64,
}

fn fit_order(steps: &[f64], residuals: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(residuals)
        .filter(|(_, r)| r.abs() > 0.0)
        .map(|(h, r)| (h.ln(), r.abs().ln()))
        .collect();
    if pts.len() < 2 {
        // All residuals at rounding zero: the stencil is exact here.
        return 2.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn check_away_from_manifolds(frame: &SqueezeFrame, h_lambda: f64) -> Result<(), Error> {
    let lambda = frame.lambda();
    if (lambda - 1.0).abs() <= 10.0 * h_lambda || lambda <= 10.0 * h_lambda {
        return Err(Error::SingularManifold { lambda });
    }
    Ok(())
}

/// Five-point second derivative (fourth-order accurate).
fn second_derivative(values: [f64; 5], h: f64) -> f64 {
    (-values[4] + 16.0 * values[3] - 30.0 * values[2] + 16.0 * values[1] - values[0])
        / (12.0 * h * h)
}

/// Residual of the full pseudo-diffusion operator applied to the Husimi
/// function, at step sizes `h, h/2, h/4`.
pub fn pde_residual_husimi(
    n: u32,
    point: PhasePoint,
    frame: &SqueezeFrame,
    h_lambda: f64,
    h_space: f64,
) -> Result<ResidualReport, Error> {
    check_away_from_manifolds(frame, h_lambda)?;
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let coeff_pp = lambda * lambda * c2 - s2;
    let coeff_qq = lambda * lambda * s2 - c2;
    let coeff_qp = (lambda * lambda + 1.0) * frame.sin_phi();
    let eval = |lam: f64, p: f64, q: f64| -> f64 {
        let f = SqueezeFrame::new(lam, frame.phi()).expect("stencil stays at positive lambda");
        husimi_fock(n, PhasePoint::new(p, q), &f).value
    };

    let mut step_sizes = Vec::with_capacity(3);
    let mut residuals = Vec::with_capacity(3);
    for level in 0..3 {
        let hl = h_lambda / f64::powi(2.0, level);
        let hs = h_space / f64::powi(2.0, level);
        let (p, q) = (point.p, point.q);
        let d_lambda = (eval(lambda + hl, p, q) - eval(lambda - hl, p, q)) / (2.0 * hl);
        let d2_p = second_derivative(
            [
                eval(lambda, p - 2.0 * hs, q),
                eval(lambda, p - hs, q),
                eval(lambda, p, q),
                eval(lambda, p + hs, q),
                eval(lambda, p + 2.0 * hs, q),
            ],
            hs,
        );
        let d2_q = second_derivative(
            [
                eval(lambda, p, q - 2.0 * hs),
                eval(lambda, p, q - hs),
                eval(lambda, p, q),
                eval(lambda, p, q + hs),
                eval(lambda, p, q + 2.0 * hs),
            ],
            hs,
        );
        let d_qp = (eval(lambda, p + hs, q + hs)
            - eval(lambda, p + hs, q - hs)
            - eval(lambda, p - hs, q + hs)
            + eval(lambda, p - hs, q - hs))
            / (4.0 * hs * hs);
        let residual = d_lambda
            - (coeff_pp * d2_p + coeff_qq * d2_q - coeff_qp * d_qp) / (4.0 * lambda * lambda);
        step_sizes.push(hs);
        residuals.push(residual);
    }
    let estimated_order = fit_order(&step_sizes, &residuals);
    Ok(ResidualReport {
        step_sizes,
        residuals,
        estimated_order,
    })
}

/// Which marginal a reduced-equation residual refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarginalAxis {
    Q,
    P,
}

/// Residual of the reduced pseudo-diffusion operator on a marginal, at step
/// sizes `h, h/2, h/4`.
pub fn pde_residual_marginal(
    axis: MarginalAxis,
    n: u32,
    coord: f64,
    frame: &SqueezeFrame,
    h_lambda: f64,
    h_space: f64,
) -> Result<ResidualReport, Error> {
    check_away_from_manifolds(frame, h_lambda)?;
    let lambda = frame.lambda();
    let c2 = frame.cos2_half();
    let s2 = frame.sin2_half();
    let diffusion = match axis {
        MarginalAxis::Q => lambda * lambda * s2 - c2,
        MarginalAxis::P => lambda * lambda * c2 - s2,
    };
    let eval = |lam: f64, u: f64| -> f64 {
        let f = SqueezeFrame::new(lam, frame.phi()).expect("stencil stays at positive lambda");
        match axis {
            MarginalAxis::Q => marginal_q(n, u, &f).value,
            MarginalAxis::P => marginal_p(n, u, &f).value,
        }
    };

    let mut step_sizes = Vec::with_capacity(3);
    let mut residuals = Vec::with_capacity(3);
    for level in 0..3 {
        let hl = h_lambda / f64::powi(2.0, level);
        let hs = h_space / f64::powi(2.0, level);
        let d_lambda = (eval(lambda + hl, coord) - eval(lambda - hl, coord)) / (2.0 * hl);
        let d2 = second_derivative(
            [
                eval(lambda, coord - 2.0 * hs),
                eval(lambda, coord - hs),
                eval(lambda, coord),
                eval(lambda, coord + hs),
                eval(lambda, coord + 2.0 * hs),
            ],
            hs,
        );
        let residual = d_lambda - diffusion / (4.0 * lambda * lambda) * d2;
        step_sizes.push(hs);
        residuals.push(residual);
    }
    let estimated_order = fit_order(&step_sizes, &residuals);
    Ok(ResidualReport {
        step_sizes,
        residuals,
        estimated_order,
    })
}
