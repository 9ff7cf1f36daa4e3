use serde::Serialize;

use super::registry::CheckId;
use crate::manifold::DerivativeMode;
use crate::models::ModelKind;

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The family does not meet the check's preconditions; counts as passing.
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: CheckId,
    pub status: CheckStatus,
    pub pass: bool,
    /// Number of evaluations that produced a residual.
    pub samples: usize,
    /// Largest residual seen; absent when nothing was evaluated.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    /// Source point of the largest residual.
    pub worst_point: Option<Vec<f64>>,
    /// Largest finite-difference error estimate among the evaluations (0 for exact jets).
    pub fd_error: f64,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    pub derivative_mode: DerivativeMode,
    pub seed: u64,
    pub version: String,
}

impl Environment {
    pub fn new(derivative_mode: DerivativeMode, seed: u64) -> Self {
        Environment {
            derivative_mode,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub model: ModelKind,
    pub hypersurface: String,
    pub grid: Vec<usize>,
    pub samples: usize,
    pub null_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub schema_version: u32,
    pub scenario: ScenarioSummary,
    pub environment: Environment,
    pub checks: Vec<CheckReport>,
    pub overall: Verdict,
}

pub(crate) fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

impl ScenarioReport {
    pub fn new(
        scenario: ScenarioSummary,
        environment: Environment,
        checks: Vec<CheckReport>,
    ) -> Self {
        let overall = if checks.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        ScenarioReport {
            schema_version: SCHEMA_VERSION,
            scenario,
            environment,
            checks,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn check(&self, id: CheckId) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == id)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let s = &self.scenario;
        let e = &self.environment;
        let grid: Vec<String> = s.grid.iter().map(|n| n.to_string()).collect();
        let mut out = String::new();
        out.push_str("# Scenario report\n\n");
        out.push_str(&format!("- schema version: {}\n", self.schema_version));
        out.push_str(&format!("- model: {}\n", s.model.as_str()));
        out.push_str(&format!("- hypersurface: {}\n", s.hypersurface));
        out.push_str(&format!(
            "- grid: {} ({} samples)\n",
            grid.join("×"),
            s.samples
        ));
        out.push_str(&format!("- null tolerance: {}\n", sci(s.null_tol)));
        out.push_str(&format!(
            "- derivative mode: {}, seed: {}, version: {}\n\n",
            e.derivative_mode.as_str(),
            e.seed,
            e.version
        ));
        out.push_str("| check | status | samples | max residual | tolerance | fd error | note |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::NotApplicable => "n/a",
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                c.name.name(),
                status,
                c.samples,
                c.max_residual.map_or("-".into(), sci),
                sci(c.tolerance),
                sci(c.fd_error),
                c.note.as_deref().unwrap_or("").replace('|', "\\|"),
            ));
        }
        out.push_str(&format!(
            "\n**Overall: {}**\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}
