//! Parameter-sweep engine: grids over (n, φ, λ) with one of three phase-point
//! parametrizations, evaluated in deterministic row order (n-major, then φ,
//! then λ).

use crate::output::Row;
use husimi_core::correlation::{corr_c1, corr_c2, corr_c3, corr_total};
use husimi_core::marginals::{marginal_p, marginal_q};
use husimi_core::phase_space::husimi_fock;
use husimi_core::{DistributionKind, PhasePoint, SqueezeFrame};

/// How the phase point of each grid row is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointSpec {
    /// A fixed (p, q), the same at every angle.
    Explicit { p: f64, q: f64 },
    /// On the circle p² + q² = r², at a fixed angle θ.
    Circle { r_sq: f64, theta_deg: f64 },
    /// On the circle p² + q² = 98 with θ locked to 3φ/2, so the rotated
    /// coordinates trace q_r = 7√2 cos φ, p_r = 7√2 sin φ.
    CoupledAngle,
}

impl PointSpec {
    pub fn point(&self, phi_deg: f64) -> PhasePoint {
        match *self {
            PointSpec::Explicit { p, q } => PhasePoint::new(p, q),
            PointSpec::Circle { r_sq, theta_deg } => {
                let r = r_sq.max(0.0).sqrt();
                let theta = theta_deg.to_radians();
                PhasePoint::new(r * theta.sin(), r * theta.cos())
            }
            PointSpec::CoupledAngle => {
                let r = 98.0f64.sqrt();
                let theta = (1.5 * phi_deg).to_radians();
                PhasePoint::new(r * theta.sin(), r * theta.cos())
            }
        }
    }
}

/// A full sweep description.
#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub kind: DistributionKind,
    pub n_min: u32,
    pub n_max: u32,
    pub lambdas: Vec<f64>,
    pub phi_deg_start: f64,
    pub phi_deg_stop: f64,
    pub phi_deg_step: f64,
    pub point: PointSpec,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min > self.n_max {
            return Err(format!("n range is empty: {}..{}", self.n_min, self.n_max));
        }
        if self.phi_deg_step.is_nan() || self.phi_deg_step <= 0.0 {
            return Err(format!(
                "phi step must be positive, got {}",
                self.phi_deg_step
            ));
        }
        if self.phi_deg_stop < self.phi_deg_start {
            return Err("phi range is empty".into());
        }
        if self.lambdas.is_empty() {
            return Err("at least one lambda is required".into());
        }
        for &l in &self.lambdas {
            if !(l.is_finite() && l > 0.0) {
                return Err(format!("lambda must be finite and positive, got {l}"));
            }
        }
        if let PointSpec::Circle { r_sq, .. } = self.point {
            if r_sq < 0.0 {
                return Err(format!("circle radius squared must be >= 0, got {r_sq}"));
            }
        }
        Ok(())
    }

    fn phi_values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0u64;
        loop {
            let phi = self.phi_deg_start + self.phi_deg_step * k as f64;
            if phi > self.phi_deg_stop + 1e-9 {
                break;
            }
            out.push(phi);
            k += 1;
        }
        out
    }

    /// Evaluates the grid. Row order: n-major, then φ, then λ.
    pub fn run(&self) -> Result<Vec<Row>, husimi_core::Error> {
        let phis = self.phi_values();
        let mut rows = Vec::with_capacity(
            (self.n_max - self.n_min + 1) as usize * phis.len() * self.lambdas.len(),
        );
        for n in self.n_min..=self.n_max {
            for &phi_deg in &phis {
                for &lambda in &self.lambdas {
                    let frame = SqueezeFrame::from_degrees(lambda, phi_deg)?;
                    let point = self.point.point(phi_deg);
                    let sample = match self.kind {
                        DistributionKind::Husimi => husimi_fock(n, point, &frame),
                        DistributionKind::MarginalQ => marginal_q(n, point.q, &frame),
                        DistributionKind::MarginalP => marginal_p(n, point.p, &frame),
                        DistributionKind::CorrTotal => corr_total(n, point, &frame),
                        DistributionKind::CorrC1 => corr_c1(n, point, &frame)?,
                        DistributionKind::CorrC2 => corr_c2(n, point, &frame)?,
                        DistributionKind::CorrC3 => corr_c3(n, point, &frame)?,
                    };
                    // Marginal samples carry only their own coordinate; keep
                    // the full grid point in the emitted row.
                    let mut sample = sample;
                    sample.point = point;
                    rows.push(Row::from_sample(&sample, phi_deg));
                }
            }
        }
        Ok(rows)
    }
}

/// The built-in figure presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig1d,
    Fig2,
    Fig3,
}

impl FigurePreset {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fig1a" => Some(Self::Fig1a),
            "fig1b" => Some(Self::Fig1b),
            "fig1c" => Some(Self::Fig1c),
            "fig1d" => Some(Self::Fig1d),
            "fig2" => Some(Self::Fig2),
            "fig3" => Some(Self::Fig3),
            _ => None,
        }
    }

    /// The sweep behind each preset. The single-squeeze surface plots run
    /// the fixed point (p, q) = (0, 7√2) over a full angle turn; the beat
    /// plots run λ = 201 over φ = 85°..90° with the angle-coupled point.
    pub fn scan(&self, n_max: u32) -> ScanSpec {
        let fixed_point = PointSpec::Explicit {
            p: 0.0,
            q: 7.0 * std::f64::consts::SQRT_2,
        };
        match self {
            Self::Fig1a | Self::Fig1b | Self::Fig1c | Self::Fig1d => {
                let lambda = match self {
                    Self::Fig1a => 21.0,
                    Self::Fig1b => 201.0,
                    Self::Fig1c => 1.0 / 21.0,
                    _ => 1.0 / 201.0,
                };
                ScanSpec {
                    kind: DistributionKind::Husimi,
                    n_min: 0,
                    n_max,
                    lambdas: vec![lambda],
                    phi_deg_start: 0.0,
                    phi_deg_stop: 360.0,
                    phi_deg_step: 2.0,
                    point: fixed_point,
                }
            }
            Self::Fig2 | Self::Fig3 => ScanSpec {
                kind: if matches!(self, Self::Fig2) {
                    DistributionKind::Husimi
                } else {
                    DistributionKind::CorrTotal
                },
                n_min: 0,
                n_max,
                lambdas: vec![201.0],
                phi_deg_start: 85.0,
                phi_deg_stop: 90.0,
                phi_deg_step: 1.0,
                point: PointSpec::CoupledAngle,
            },
        }
    }
}
