//! Deterministic output formatting: fixed 17-significant-digit floats, a
//! fixed CSV schema, and JSON records with a fixed field order.

use husimi_core::DistributionSample;
use serde::Serialize;
use std::io::Write;

/// 17 significant digits, locale-independent; identical inputs give
/// byte-identical text.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "kind,n,phi_deg,lambda,p,q,p_r,q_r,value,flags";

/// One evaluated grid point in file order.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub kind: String,
    pub n: u32,
    pub phi_deg: f64,
    pub lambda: f64,
    pub p: f64,
    pub q: f64,
    pub p_r: f64,
    pub q_r: f64,
    pub value: f64,
    pub flags: Vec<String>,
}

impl Row {
    pub fn from_sample(sample: &DistributionSample, phi_deg: f64) -> Self {
        let rotated = husimi_core::phase_space::rotate(sample.point, &sample.frame);
        Row {
            kind: sample.kind.to_string(),
            n: sample.n,
            phi_deg,
            lambda: sample.frame.lambda(),
            p: sample.point.p,
            q: sample.point.q,
            p_r: rotated.p_r,
            q_r: rotated.q_r,
            value: sample.value,
            flags: sample.flags.names().iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            fmt_f64(self.phi_deg),
            fmt_f64(self.lambda),
            fmt_f64(self.p),
            fmt_f64(self.q),
            fmt_f64(self.p_r),
            fmt_f64(self.q_r),
            fmt_f64(self.value),
            self.flags.join(";"),
        )
    }
}

pub fn write_csv(mut w: impl Write, rows: &[Row]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.to_csv_line())?;
    }
    Ok(())
}

pub fn write_json(mut w: impl Write, rows: &[Row]) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(rows).expect("rows serialize");
    writeln!(w, "{text}")
}

/// Mirror of the core check result with a serialization-stable field order.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub measured: Option<f64>,
    pub tolerance: f64,
}

impl From<&husimi_core::oracle::CheckResult> for CheckRecord {
    fn from(r: &husimi_core::oracle::CheckResult) -> Self {
        CheckRecord {
            name: r.name.clone(),
            pass: r.pass,
            measured: r.measured,
            tolerance: r.tolerance,
        }
    }
}
