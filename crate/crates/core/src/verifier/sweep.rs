//! Measured against predicted invariants of `Σ_t` across a list of `t`.

use serde::Serialize;

use super::report::{sci, Environment, Verdict, SCHEMA_VERSION};
use super::runner::Sample;
use super::VerifyError;
use crate::hypersurface::checks::Invariants;
use crate::hypersurface::{Evaluator, NULL_TOL};
use crate::models::{Family, FamilySpec, ModelKind};

/// Row tolerance on every delta column.
pub const SWEEP_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub t: f64,
    /// Measured principal curvatures (ascending, orientation matched to the prediction).
    pub lambdas: [f64; 3],
    pub mean: f64,
    pub scalar: f64,
    pub cos2theta: Option<f64>,
    pub sin_gap: Option<f64>,
    /// Set when `λ₁ = λ₂` and the principal angle is a gauge choice.
    pub gauge: bool,
    pub minus8_l1l2: f64,
    pub rbar: f64,
    pub predicted_lambdas: [f64; 3],
    pub predicted_mean: f64,
    pub delta_lambdas: f64,
    pub delta_mean: f64,
    /// `|−8λ₁λ₂ − R̄|`.
    pub delta_rbar: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub schema_version: u32,
    pub space: ModelKind,
    pub environment: Environment,
    pub tolerance: f64,
    pub rows: Vec<SweepRow>,
    pub overall: Verdict,
}

fn row(space: ModelKind, t: f64, ev: Evaluator) -> Result<SweepRow, VerifyError> {
    let family = Family::new(FamilySpec::SigmaT { space, t })
        .map_err(|e| VerifyError::construction(format!("sigma-t at t = {t}"), e))?;
    let u: Vec<f64> = family
        .sample_box()
        .iter()
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let fail = |e| VerifyError::construction(format!("evaluating sigma-t at t = {t}"), e);
    let s = Sample::evaluate(&family, &u, ev, NULL_TOL).map_err(fail)?;
    let pred = family.prediction(&u).expect("sigma-t has closed forms");
    let raw = Invariants::of(&s.sd);
    let dist = |inv: &Invariants| {
        inv.lambdas
            .iter()
            .zip(&pred.lambdas)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    };
    let inv = if dist(&raw.flipped()) < dist(&raw) {
        raw.flipped()
    } else {
        raw
    };
    let scalar = s.scalar().map_err(fail)?;
    let rbar = s.model.rbar.unwrap_or(f64::NAN);
    let (minus8, gauge) = match &s.sd.null {
        Some(nf) => (-8.0 * nf.lambda1 * nf.lambda2, nf.gauge),
        None => (f64::NAN, false),
    };
    let delta_lambdas = dist(&inv);
    let delta_mean = (inv.mean - pred.mean).abs();
    let delta_rbar = (minus8 - rbar).abs();
    let pass = [delta_lambdas, delta_mean, delta_rbar]
        .iter()
        .all(|d| *d <= SWEEP_TOLERANCE);
    Ok(SweepRow {
        t,
        lambdas: [inv.lambdas[0], inv.lambdas[1], inv.lambdas[2]],
        mean: inv.mean,
        scalar,
        cos2theta: inv.cos2theta,
        sin_gap: inv.sin_gap,
        gauge,
        minus8_l1l2: minus8,
        rbar,
        predicted_lambdas: pred.lambdas,
        predicted_mean: pred.mean,
        delta_lambdas,
        delta_mean,
        delta_rbar,
        pass,
    })
}

/// One row per `t`, each evaluated at the centre of the family's sample box.
pub fn sweep_sigma_t(
    space: ModelKind,
    ts: &[f64],
    ev: Evaluator,
) -> Result<SweepTable, VerifyError> {
    if !matches!(space, ModelKind::S2xs2 | ModelKind::H2xh2) {
        return Err(VerifyError::Config(format!(
            "sweep needs s2xs2 or h2xh2, got {}",
            space.as_str()
        )));
    }
    if ts.is_empty() {
        return Err(VerifyError::Config("empty t list".into()));
    }
    let rows = ts
        .iter()
        .map(|&t| row(space, t, ev))
        .collect::<Result<Vec<_>, _>>()?;
    let overall = if rows.iter().all(|r| r.pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SweepTable {
        schema_version: SCHEMA_VERSION,
        space,
        environment: Environment::new(ev.mode, 0),
        tolerance: SWEEP_TOLERANCE,
        rows,
        overall,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.6}"))
}

impl SweepTable {
    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table is plain data");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "# sigma-t sweep in {}\n\n- schema version: {}\n- derivative mode: {}, version: {}\n- tolerance: {}\n\n",
            self.space.as_str(),
            self.schema_version,
            self.environment.derivative_mode.as_str(),
            self.environment.version,
            sci(self.tolerance)
        );
        out.push_str(
            "| t | λ₁ | λ₂ | λ₃ | H | R | cos2θ | \\|sinθ\\|(λ₁−λ₂) | −8λ₁λ₂ | R̄ | pred λ | pred H | Δλ | ΔH | ΔR̄ | pass |\n",
        );
        out.push_str(&"|---".repeat(16));
        out.push_str("|\n");
        for r in &self.rows {
            let pl: Vec<String> = r
                .predicted_lambdas
                .iter()
                .map(|x| format!("{x:.6}"))
                .collect();
            out.push_str(&format!(
                "| {} | {:.6} | {:.6} | {:.6} | {:.6} | {:.6} | {}{} | {} | {:.6} | {} | ({}) | {:.6} | {} | {} | {} | {} |\n",
                r.t,
                r.lambdas[0],
                r.lambdas[1],
                r.lambdas[2],
                r.mean,
                r.scalar,
                opt(r.cos2theta),
                if r.gauge { " (gauge)" } else { "" },
                opt(r.sin_gap),
                r.minus8_l1l2,
                r.rbar,
                pl.join(", "),
                r.predicted_mean,
                sci(r.delta_lambdas),
                sci(r.delta_mean),
                sci(r.delta_rbar),
                if r.pass { "yes" } else { "NO" },
            ));
        }
        out.push_str(&format!(
            "\n**Overall: {}**\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}
