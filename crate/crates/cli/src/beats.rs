//! Beat diagnostics over emitted scan data: sign-change counts and local
//! minima of a smoothed magnitude envelope, computed deterministically from
//! the CSV alone.

use serde::Serialize;

/// Centered window width of the moving-maximum envelope.
pub const ENVELOPE_WINDOW: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct BeatReport {
    pub kind: String,
    pub lambda: f64,
    pub phi_deg: f64,
    pub n_of_sign_changes: u32,
    pub envelope_minima: Vec<u32>,
    pub max_value: f64,
}

/// One (kind, φ, λ) series of the scan, ordered by n.
#[derive(Clone, Debug)]
pub struct Series {
    pub kind: String,
    pub lambda: f64,
    pub phi_deg: f64,
    pub n: Vec<u32>,
    pub value: Vec<f64>,
}

/// Parses scan CSV text into series grouped by (kind, φ, λ), in order of
/// first appearance. Grouping keys use the raw field text so no float
/// round-trip can split a series.
pub fn parse_series(text: &str) -> Result<Vec<Series>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    if header != crate::output::CSV_HEADER {
        return Err(format!("unexpected CSV header: {header}"));
    }
    let mut order: Vec<(String, String, String)> = Vec::new();
    let mut series: Vec<Series> = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(format!(
                "row {}: expected 10 fields, got {}",
                idx + 2,
                fields.len()
            ));
        }
        let key = (
            fields[0].to_string(),
            fields[2].to_string(),
            fields[3].to_string(),
        );
        let n: u32 = fields[1]
            .parse()
            .map_err(|e| format!("row {}: bad n: {e}", idx + 2))?;
        let value: f64 = fields[8]
            .parse()
            .map_err(|e| format!("row {}: bad value: {e}", idx + 2))?;
        let pos = match order.iter().position(|k| *k == key) {
            Some(pos) => pos,
            None => {
                order.push(key.clone());
                series.push(Series {
                    kind: key.0.clone(),
                    phi_deg: key
                        .1
                        .parse()
                        .map_err(|e| format!("row {}: bad phi: {e}", idx + 2))?,
                    lambda: key
                        .2
                        .parse()
                        .map_err(|e| format!("row {}: bad lambda: {e}", idx + 2))?,
                    n: Vec::new(),
                    value: Vec::new(),
                });
                series.len() - 1
            }
        };
        series[pos].n.push(n);
        series[pos].value.push(value);
    }
    for s in &mut series {
        let mut idx: Vec<usize> = (0..s.n.len()).collect();
        idx.sort_by_key(|&i| s.n[i]);
        s.n = idx.iter().map(|&i| s.n[i]).collect();
        s.value = idx.iter().map(|&i| s.value[i]).collect();
    }
    Ok(series)
}

/// Count of consecutive-value sign flips; exact zeros break a flip.
pub fn sign_changes(values: &[f64]) -> u32 {
    values.windows(2).filter(|w| w[0] * w[1] < 0.0).count() as u32
}

/// Moving-maximum envelope of |value| over the centered window: the curve
/// through the local oscillation peaks, insensitive to the even/odd carrier
/// comb of the distributions. Returns (offset of the first smoothed index,
/// envelope values).
pub fn smoothed_envelope(values: &[f64]) -> (usize, Vec<f64>) {
    let half = ENVELOPE_WINDOW / 2;
    if values.len() < ENVELOPE_WINDOW {
        return (0, Vec::new());
    }
    let env = (half..values.len() - half)
        .map(|i| {
            values[i - half..=i + half]
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
        })
        .collect();
    (half, env)
}

/// Positions (as indices into the original series) of local minima of the
/// envelope. The moving maximum produces plateaus, so equal-value runs are
/// collapsed first and a run lower than both neighbors counts once, at its
/// first index.
pub fn envelope_minima(values: &[f64]) -> Vec<usize> {
    let (offset, env) = smoothed_envelope(values);
    let mut runs: Vec<(f64, usize)> = Vec::new();
    for (i, &v) in env.iter().enumerate() {
        match runs.last() {
            Some(&(last, _)) if last == v => {}
            _ => runs.push((v, offset + i)),
        }
    }
    let mut out = Vec::new();
    for j in 1..runs.len().saturating_sub(1) {
        if runs[j].0 < runs[j - 1].0 && runs[j].0 < runs[j + 1].0 {
            out.push(runs[j].1);
        }
    }
    out
}

pub fn analyze(series: &Series) -> BeatReport {
    let minima = envelope_minima(&series.value)
        .iter()
        .map(|&i| series.n[i])
        .collect();
    BeatReport {
        kind: series.kind.clone(),
        lambda: series.lambda,
        phi_deg: series.phi_deg,
        n_of_sign_changes: sign_changes(&series.value),
        envelope_minima: minima,
        max_value: series.value.iter().fold(0.0f64, |m, v| m.max(v.abs())),
    }
}
