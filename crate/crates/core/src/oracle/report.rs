//! Machine-readable verification results.

/// Outcome of one verification check: the measured discrepancy (or `None`
/// for skipped checks) against its tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub measured: Option<f64>,
    pub tolerance: f64,
}

impl CheckResult {
    /// A check that compares a measured discrepancy against a tolerance.
    pub fn measured(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured.is_finite() && measured <= tolerance,
            measured: Some(measured),
            tolerance,
        }
    }

    /// A check whose pass/fail was decided by other means (e.g. an expected
    /// refusal happened).
    pub fn boolean(name: impl Into<String>, pass: bool, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass,
            measured: None,
            tolerance,
        }
    }

    /// A check skipped because the frame sits on a singular manifold.
    pub fn skipped_singular(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: format!("{} [skipped: singular manifold]", name.into()),
            pass: true,
            measured: None,
            tolerance,
        }
    }
}

/// True when every check in the list passed.
pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}
