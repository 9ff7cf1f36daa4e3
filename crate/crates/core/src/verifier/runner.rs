//! Executes a scenario: samples the family on a grid and evaluates each
//! selected check, pointwise or over the whole scenario.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::ScenarioConfig;
use super::registry::{CheckId, Needs};
use super::report::{sci, CheckReport, CheckStatus, Environment, ScenarioReport, ScenarioSummary};
use super::VerifyError;
use crate::error::{Error, Result};
use crate::hypersurface::checks::*;
use crate::hypersurface::{
    evaluate_point, null_frame_data, shape_data, Evaluator, Immersion, NullFrame, NullFrameData,
    PointData, Reparametrized, ShapeData, NULL_TOL,
};
use crate::manifold::{curvature, DerivativeMode};
use crate::models::{grid, Family, FamilyMap, FamilyTraits, ModelSpace, Prediction};
use crate::numerics::Mat;
use crate::parastructure::{verify_neutral_properties, verify_paracomplex, NeutralMetric};

/// Overrides every registry default tolerance (explicit config tolerances still win).
pub const TOLERANCE_ENV: &str = "PARANULL_TOLERANCE";
/// `fd` or `jet`; overrides the config's derivative mode.
pub const DERIVATIVES_ENV: &str = "PARANULL_DERIVATIVES";

/// Number of random reparametrizations tried by `gauge-invariance`.
pub const GAUGE_TRIALS: usize = 100;
/// `⟨x,a⟩` at which `mab-counterexample` evaluates `M_ab`.
pub const MAB_PROBE_XA: f64 = 0.3;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub default_tolerance: Option<f64>,
    pub force_mode: Option<DerivativeMode>,
}

impl RunOptions {
    /// Reads [`TOLERANCE_ENV`] and [`DERIVATIVES_ENV`].
    pub fn from_env() -> std::result::Result<Self, VerifyError> {
        let var = |k: &str| std::env::var(k).ok().filter(|v| !v.trim().is_empty());
        let default_tolerance = match var(TOLERANCE_ENV) {
            None => None,
            Some(v) => match v.trim().parse::<f64>() {
                Ok(t) if t > 0.0 && t.is_finite() => Some(t),
                _ => {
                    return Err(VerifyError::Config(format!(
                        "{TOLERANCE_ENV} must be a positive number, got '{v}'"
                    )))
                }
            },
        };
        let force_mode = match var(DERIVATIVES_ENV).as_deref().map(str::trim) {
            None => None,
            Some("fd") => Some(DerivativeMode::Fd),
            Some("jet") => Some(DerivativeMode::Jet),
            Some(v) => {
                return Err(VerifyError::Config(format!(
                    "{DERIVATIVES_ENV} must be 'fd' or 'jet', got '{v}'"
                )))
            }
        };
        Ok(RunOptions {
            default_tolerance,
            force_mode,
        })
    }
}

/// One evaluated sample: the localized model and immersion plus the extrinsic data.
pub struct Sample {
    pub u: Vec<f64>,
    pub model: ModelSpace,
    pub imm: FamilyMap,
    pub pd: PointData,
    pub sd: ShapeData,
    ev: Evaluator,
    null_tol: f64,
    scalar: OnceCell<Result<f64>>,
    frame: OnceCell<Result<NullFrameData>>,
}

impl Sample {
    pub fn evaluate(family: &Family, u: &[f64], ev: Evaluator, null_tol: f64) -> Result<Sample> {
        let (model, imm) = family.localize(u)?;
        let pd = evaluate_point(&imm, &model.metric, &model.pstruct, u, &ev)?;
        let sd = shape_data(&pd.local, u, null_tol)?;
        Ok(Sample {
            u: u.to_vec(),
            model,
            imm,
            pd,
            sd,
            ev,
            null_tol,
            scalar: OnceCell::new(),
            frame: OnceCell::new(),
        })
    }

    /// Scalar curvature of the induced metric.
    pub fn scalar(&self) -> Result<f64> {
        self.scalar
            .get_or_init(|| {
                induced_scalar_curvature(&self.imm, &self.model.metric, &self.u, &self.ev)
                    .map(|r| r.scalar)
            })
            .clone()
    }

    pub fn frame(&self) -> Result<&NullFrameData> {
        self.frame
            .get_or_init(|| {
                null_frame_data(
                    &self.imm,
                    &self.model.metric,
                    &self.model.pstruct,
                    &self.pd,
                    &self.sd,
                    &self.ev,
                    self.null_tol,
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn null(&self) -> Result<&NullFrame> {
        self.sd.null.as_ref().ok_or(Error::NonNullPoint {
            c_plus: self.sd.c_plus,
        })
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::of(&self.sd)
    }

    /// The image point in ambient chart coordinates.
    pub fn image(&self) -> &[f64] {
        &self.pd.local.f
    }
}

/// Scenario-wide data shared by the pointwise checks.
struct Context<'a> {
    family: &'a Family,
    traits: FamilyTraits,
    rbar: Option<f64>,
    null_tol: f64,
    /// Global orientation flip against the closed forms, fixed at the first sample.
    flip: bool,
    ref_mean: f64,
    /// `(λ₁λ₂, λ₁ − λ₂)` at the first sample.
    ref_pair: Option<(f64, f64)>,
}

enum Outcome {
    NotApplicable,
    /// The check is undefined at this particular sample.
    Skipped(&'static str),
    Value(f64),
    Failed(String),
}

fn prediction_distance(inv: &Invariants, p: &Prediction) -> f64 {
    inv.lambdas
        .iter()
        .zip(&p.lambdas)
        .fold((inv.mean - p.mean).abs(), |m, (a, b)| m.max((a - b).abs()))
}

fn oriented(inv: Invariants, flip: bool) -> Invariants {
    if flip {
        inv.flipped()
    } else {
        inv
    }
}

impl<'a> Context<'a> {
    fn new(family: &'a Family, first: &Sample, null_tol: f64) -> Self {
        let inv = first.invariants();
        let flip = family.prediction(&first.u).is_some_and(|p| {
            prediction_distance(&inv.flipped(), &p) < prediction_distance(&inv, &p)
        });
        Context {
            family,
            traits: family.traits(),
            rbar: first.model.rbar,
            null_tol,
            flip,
            ref_mean: first.sd.mean_h,
            ref_pair: first
                .sd
                .null
                .as_ref()
                .map(|n| (n.lambda1 * n.lambda2, n.lambda1 - n.lambda2)),
        }
    }

    /// Why a check cannot apply to this family, if it cannot.
    fn unmet(&self, needs: Needs) -> Option<&'static str> {
        let t = self.traits;
        let fail = match needs {
            Needs::Nothing => return None,
            Needs::Einstein => self
                .rbar
                .is_none()
                .then_some("ambient space is not Einstein"),
            Needs::Null => (!t.null).then_some("hypersurface is not null"),
            Needs::Prediction => self
                .family
                .prediction(
                    &self
                        .family
                        .sample_box()
                        .iter()
                        .map(|(a, b)| 0.5 * (a + b))
                        .collect::<Vec<_>>(),
                )
                .is_none()
                .then_some("no closed-form curvatures for this family"),
            Needs::Cmc => (!t.cmc).then_some("hypersurface is not CMC"),
            Needs::NullCmc => (!(t.null && t.cmc)).then_some("hypersurface is not null CMC"),
            Needs::NullCmcNonMinimal => {
                if !(t.null && t.cmc) {
                    Some("precondition unmet: not null CMC")
                } else if t.minimal {
                    Some("precondition unmet: hypersurface is minimal")
                } else {
                    None
                }
            }
            Needs::Minimal => (!t.minimal).then_some("hypersurface is not minimal"),
            Needs::TotallyGeodesicNull => (!(t.null && t.totally_geodesic))
                .then_some("not a totally geodesic null hypersurface"),
            Needs::Mab => self
                .family
                .point_with_xa(0.0)
                .is_none()
                .then_some("only defined for M_ab"),
        };
        fail
    }

    fn flip_for(&self, s: &Sample, p: &Prediction) -> bool {
        if self.family.recentres() {
            let inv = s.invariants();
            prediction_distance(&inv.flipped(), p) < prediction_distance(&inv, p)
        } else {
            self.flip
        }
    }
}

fn value(r: Result<f64>) -> Outcome {
    match r {
        Ok(v) if v.is_finite() => Outcome::Value(v),
        Ok(v) => Outcome::Failed(format!("non-finite residual {v}")),
        Err(e) => Outcome::Failed(e.to_string()),
    }
}

fn pointwise(id: CheckId, s: &Sample, ctx: &Context) -> Outcome {
    let rbar = ctx.rbar.unwrap_or(f64::NAN);
    let sd = &s.sd;
    let mode = s.ev.mode;
    let needs_null = matches!(
        id.info().needs,
        Needs::Null | Needs::NullCmc | Needs::NullCmcNonMinimal | Needs::TotallyGeodesicNull
    );
    let nf = match s.null() {
        Ok(nf) => Some(nf),
        Err(e) if needs_null => return Outcome::Failed(e.to_string()),
        Err(_) => None,
    };
    let nf_ = || nf.expect("null checked above");
    value(match id {
        CheckId::Einstein => curvature(&s.model.metric, s.image(), mode)
            .map(|r| r.einstein_defect().max((r.scalar - rbar).abs())),
        CheckId::Paracomplex => verify_paracomplex(
            &s.model.pstruct,
            &s.model.metric,
            &[s.image().to_vec()],
            mode,
        )
        .map(|r| r.max_residual()),
        CheckId::Neutral => {
            let nm = NeutralMetric::new(&s.model.metric, &s.model.pstruct);
            verify_neutral_properties(&nm, &[s.image().to_vec()], mode).map(|r| {
                if r.signature_ok {
                    r.scalar.max(r.weyl).max(r.christoffel).max(r.ricci)
                } else {
                    f64::INFINITY
                }
            })
        }
        CheckId::Nullity => Ok(sd.c_plus.abs()),
        CheckId::CRange => Ok((sd.c_plus.abs() - 1.0).max(0.0)),
        CheckId::Eigenvalues => {
            let Some(p) = ctx.family.prediction(&s.u) else {
                return Outcome::NotApplicable;
            };
            Ok(prediction_distance(
                &oriented(s.invariants(), ctx.flip_for(s, &p)),
                &p,
            ))
        }
        CheckId::Cmc => Ok(if ctx.family.recentres() {
            (sd.mean_h.abs() - ctx.ref_mean.abs()).abs()
        } else {
            (sd.mean_h - ctx.ref_mean).abs()
        }),
        CheckId::Minimal => Ok(sd.mean_h.abs()),
        CheckId::CmcRelation => {
            let nf = nf_();
            let (p0, d0) = ctx.ref_pair.unwrap_or((f64::NAN, f64::NAN));
            let prod = nf.lambda1 * nf.lambda2;
            Ok((-8.0 * prod - rbar)
                .abs()
                .max((prod - p0).abs())
                .max((nf.lambda1 - nf.lambda2 - d0).abs()))
        }
        CheckId::CmcAngle => Ok(cmc_angle_expression(nf_()).abs()),
        CheckId::GradientC => Ok(gradient_c_residual(&s.pd)),
        CheckId::XDerivative => x_derivative_residual(&s.pd, sd),
        CheckId::HessianC => hessian_c_residual(&s.pd, sd),
        CheckId::LaplacianC => laplacian_c_sides(&s.pd, sd).map(|(l, r)| (l - r).abs()),
        CheckId::Gauss => s.scalar().map(|r| (r - gauss_prediction(sd, rbar)).abs()),
        CheckId::NullScalarFormula => s.scalar().map(|r| (r - null_scalar_formula(nf_())).abs()),
        CheckId::NullScalarCorrected => s
            .scalar()
            .map(|r| (r - null_scalar_corrected(&s.pd, nf_())).abs()),
        CheckId::TotallyGeodesic => s.scalar().map(|r| {
            let a = sd.lambdas.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            a.max(r.abs()).max(rbar.abs())
        }),
        CheckId::NullIdentity => Ok(null_identity_expression(nf_(), rbar).abs()),
        CheckId::PrincipalAngle => Ok(principal_angle_residual(sd, nf_())),
        CheckId::ConnectionRelations => match s.frame() {
            Err(Error::FrameSingular { .. }) => return Outcome::Skipped("isolated umbilic point"),
            r => r.map(connection_residual),
        },
        CheckId::NullNormal => {
            let (agree, defect) = null_normal_residual(&s.pd, ctx.null_tol, NULL_TOL);
            if !agree {
                return Outcome::Failed(format!(
                    "null classifications disagree at C₊ = {:e}",
                    sd.c_plus
                ));
            }
            Ok(if sd.c_plus.abs() < ctx.null_tol {
                defect
            } else {
                0.0
            })
        }
        CheckId::TrivialDirection => Ok(trivial_direction_residual(sd, nf_())),
        CheckId::MabCounterexample | CheckId::GaugeInvariance | CheckId::FdOracle => {
            return Outcome::NotApplicable
        }
    })
}

/// Running maximum over the evaluations of one check.
#[derive(Default)]
struct Accumulator {
    samples: usize,
    max: Option<f64>,
    worst: Option<Vec<f64>>,
    fd_error: f64,
    failures: usize,
    first_failure: Option<String>,
    skipped: BTreeMap<&'static str, usize>,
    note: Option<String>,
}

impl Accumulator {
    fn record(&mut self, u: &[f64], outcome: Outcome, fd_error: f64) {
        match outcome {
            Outcome::NotApplicable => {}
            Outcome::Skipped(why) => *self.skipped.entry(why).or_insert(0) += 1,
            Outcome::Value(v) => {
                self.samples += 1;
                self.fd_error = self.fd_error.max(fd_error);
                if self.max.is_none_or(|m| v > m) {
                    self.max = Some(v);
                    self.worst = Some(u.to_vec());
                }
            }
            Outcome::Failed(msg) => {
                self.failures += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("at {u:?}: {msg}"));
                }
            }
        }
    }

    fn finish(self, id: CheckId, tolerance: f64) -> CheckReport {
        let within = self.max.is_none_or(|m| m <= tolerance);
        let pass = self.failures == 0 && self.samples > 0 && within;
        let mut notes: Vec<String> = self.note.into_iter().collect();
        notes.extend(
            self.skipped
                .iter()
                .map(|(why, n)| format!("{n} sample(s) skipped: {why}")),
        );
        if self.failures > 0 {
            notes.push(format!(
                "{} evaluation(s) failed, first {}",
                self.failures,
                self.first_failure.unwrap_or_default()
            ));
        } else if self.samples == 0 {
            notes.push("no sample could be evaluated".into());
        }
        CheckReport {
            name: id,
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            pass,
            samples: self.samples,
            max_residual: self.max,
            tolerance,
            worst_point: self.worst,
            fd_error: self.fd_error,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        }
    }
}

fn not_applicable(id: CheckId, tolerance: f64, why: &str) -> CheckReport {
    CheckReport {
        name: id,
        status: CheckStatus::NotApplicable,
        pass: true,
        samples: 0,
        max_residual: None,
        tolerance,
        worst_point: None,
        fd_error: 0.0,
        note: Some(why.to_string()),
    }
}

fn sample_fd_error(id: CheckId, s: &Sample) -> f64 {
    let base = s.pd.fd_error;
    match id {
        CheckId::ConnectionRelations => s.frame().map_or(base, |f| base.max(f.fd_error)),
        _ => base,
    }
}

/// `M_ab` at `⟨x,a⟩ = 0.3`: `H = 0` while `−8λ₁λ₂` misses `R̄` by at least 1.
fn mab_counterexample(ctx: &Context, ev: Evaluator) -> Accumulator {
    let mut acc = Accumulator::default();
    let Some(u) = ctx.family.point_with_xa(MAB_PROBE_XA) else {
        return acc;
    };
    let outcome = Sample::evaluate(ctx.family, &u, ev, ctx.null_tol).and_then(|s| {
        let nf = s.null()?;
        let product = -8.0 * nf.lambda1 * nf.lambda2;
        let rbar = ctx.rbar.unwrap_or(f64::NAN);
        let deviation = (product - rbar).abs();
        acc.note = Some(format!(
            "at <x,a> = {MAB_PROBE_XA}: -8 l1 l2 = {}, R̄ = {rbar}, deviation {}",
            sci(product),
            sci(deviation)
        ));
        Ok((
            s.sd.mean_h.abs().max((1.0 - deviation).max(0.0)),
            s.pd.fd_error,
        ))
    });
    match outcome {
        Ok((r, e)) => acc.record(&u, Outcome::Value(r), e),
        Err(e) => acc.record(&u, Outcome::Failed(e.to_string()), 0.0),
    }
    acc
}

/// A random orthogonal 3×3 matrix (Gram–Schmidt on uniform entries) with random determinant sign.
fn random_orthogonal(rng: &mut ChaCha8Rng) -> Mat<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(3);
    while cols.len() < 3 {
        let mut v: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        for c in &cols {
            let p: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(c).for_each(|(x, y)| *x -= p * y);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    if rng.random_bool(0.5) {
        cols[2].iter_mut().for_each(|x| *x = -*x);
    }
    Mat::from_cols(&cols)
}

/// Invariants and `R` under random orthogonal reparametrizations about the samples.
fn gauge_invariance(samples: &[Sample], seed: u64, null_tol: f64) -> Accumulator {
    let mut acc = Accumulator::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ev = Evaluator::jet();
    for trial in 0..GAUGE_TRIALS {
        let s = &samples[trial % samples.len()];
        let linear = random_orthogonal(&mut rng);
        let rep = Reparametrized::new(&s.imm, &s.u, linear);
        let det = rep.determinant();
        let outcome = (|| -> Result<f64> {
            let base = Sample::evaluate_with(&rep, &s.model, &s.u, ev, null_tol)?;
            let reference = Sample::evaluate_with(&s.imm, &s.model, &s.u, ev, null_tol)?;
            let mut inv = Invariants::of(&base.1);
            if det < 0.0 {
                inv = inv.flipped();
            }
            let r0 = induced_scalar_curvature(&s.imm, &s.model.metric, &s.u, &ev)?.scalar;
            let r1 = induced_scalar_curvature(&rep, &s.model.metric, &s.u, &ev)?.scalar;
            Ok(inv
                .distance(&Invariants::of(&reference.1))
                .max((r1 - r0).abs()))
        })();
        acc.record(
            &s.u,
            match outcome {
                Ok(v) => Outcome::Value(v),
                Err(e) => Outcome::Failed(e.to_string()),
            },
            0.0,
        );
    }
    acc
}

impl Sample {
    /// Point data and shape data for an arbitrary immersion into `model`.
    fn evaluate_with<I: Immersion>(
        imm: &I,
        model: &ModelSpace,
        u: &[f64],
        ev: Evaluator,
        null_tol: f64,
    ) -> Result<(PointData, ShapeData)> {
        let pd = evaluate_point(imm, &model.metric, &model.pstruct, u, &ev)?;
        let sd = shape_data(&pd.local, u, null_tol)?;
        Ok((pd, sd))
    }
}

/// Quantities compared by the oracle: the basic invariants, then every
/// selected pointwise hypersurface check.
fn oracle_values(s: &Sample, ctx: &Context, checks: &[CheckId]) -> Vec<(String, Option<f64>)> {
    let inv = s.invariants();
    let mut out = vec![
        ("C+".to_string(), Some(s.sd.c_plus)),
        ("H".into(), Some(inv.mean)),
        ("|sigma|^2".into(), Some(inv.sigma_norm2)),
        ("R".into(), s.scalar().ok()),
    ];
    for (i, l) in inv.lambdas.iter().enumerate() {
        out.push((format!("lambda{}", i + 1), Some(*l)));
    }
    for &id in checks {
        if id.is_pointwise() && !id.is_ambient() && ctx.unmet(id.info().needs).is_none() {
            let v = match pointwise(id, s, ctx) {
                Outcome::Value(v) => Some(v),
                _ => None,
            };
            out.push((id.name().to_string(), v));
        }
    }
    out
}

/// Jet values against fd values, with the fd error estimated by step doubling.
///
/// The residual is how far `|jet − fd(h)|` exceeds `|fd(h) − fd(2h)|` plus
/// the internal Richardson estimate and a roundoff allowance.
fn fd_oracle(
    family: &Family,
    ctx: &Context,
    points: &[Vec<f64>],
    checks: &[CheckId],
) -> Accumulator {
    let mut acc = Accumulator::default();
    let fd = Evaluator::fd();
    let mut worst_quantity: BTreeMap<String, f64> = BTreeMap::new();
    for u in points {
        let trio = (|| -> Result<[Sample; 3]> {
            Ok([
                Sample::evaluate(family, u, Evaluator::jet(), ctx.null_tol)?,
                Sample::evaluate(family, u, fd, ctx.null_tol)?,
                Sample::evaluate(family, u, fd.scaled(2.0), ctx.null_tol)?,
            ])
        })();
        let [jet, fd1, fd2] = match trio {
            Ok(t) => t,
            Err(e) => {
                acc.record(u, Outcome::Failed(e.to_string()), 0.0);
                continue;
            }
        };
        let (vj, v1, v2) = (
            oracle_values(&jet, ctx, checks),
            oracle_values(&fd1, ctx, checks),
            oracle_values(&fd2, ctx, checks),
        );
        let internal = fd1.pd.fd_error;
        let mut excess: f64 = 0.0;
        let mut estimate: f64 = 0.0;
        for ((name, a), ((_, b), (_, c))) in vj.iter().zip(v1.iter().zip(&v2)) {
            if let (Some(a), Some(b), Some(c)) = (a, b, c) {
                let est = (b - c).abs() + internal + 1e-12 * (1.0 + a.abs());
                estimate = estimate.max(est);
                let e = ((a - b).abs() - est).max(0.0);
                let w = worst_quantity.entry(name.clone()).or_insert(0.0);
                *w = w.max(e);
                excess = excess.max(e);
            }
        }
        acc.record(u, Outcome::Value(excess), estimate);
    }
    let offenders: Vec<String> = worst_quantity
        .iter()
        .filter(|(_, &e)| e > 0.0)
        .map(|(k, e)| format!("{k} {}", sci(*e)))
        .collect();
    if !offenders.is_empty() {
        acc.note = Some(format!("excess over estimate: {}", offenders.join(", ")));
    }
    acc
}

/// Evenly spread subset of at most `n` points, always including the first and last.
fn spread(points: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    if points.len() <= n {
        return points.to_vec();
    }
    (0..n)
        .map(|k| points[k * (points.len() - 1) / (n - 1)].clone())
        .collect()
}

/// Largest number of grid points at which `fd-oracle` runs three full evaluations.
pub const ORACLE_POINTS: usize = 8;

pub fn run(
    cfg: &ScenarioConfig,
    opts: &RunOptions,
) -> std::result::Result<ScenarioReport, VerifyError> {
    let family = cfg
        .family()
        .map_err(|e| VerifyError::construction("building the hypersurface", e))?;
    let mode = opts.force_mode.unwrap_or(cfg.derivative_mode);
    let ev = Evaluator::new(mode);
    let null_tol = cfg.null_tol.unwrap_or(NULL_TOL);
    let points = grid(&family.sample_box(), &cfg.grid);
    let mut samples = Vec::with_capacity(points.len());
    for u in &points {
        let s = Sample::evaluate(&family, u, ev, null_tol).map_err(|e| {
            VerifyError::construction(format!("evaluating {} at {u:?}", family.label()), e)
        })?;
        samples.push(s);
    }
    let ctx = Context::new(&family, &samples[0], null_tol);
    let tolerance = |id: CheckId| {
        cfg.tolerances
            .get(&id)
            .copied()
            .or(opts.default_tolerance)
            .unwrap_or(id.info().default_tolerance)
    };

    let mut reports = Vec::with_capacity(cfg.checks.len());
    for &id in &cfg.checks {
        let tol = tolerance(id);
        if let Some(why) = ctx.unmet(id.info().needs) {
            reports.push(not_applicable(id, tol, why));
            continue;
        }
        let acc = match id {
            CheckId::MabCounterexample => mab_counterexample(&ctx, ev),
            CheckId::GaugeInvariance => gauge_invariance(&samples, cfg.seed, null_tol),
            CheckId::FdOracle => {
                fd_oracle(&family, &ctx, &spread(&points, ORACLE_POINTS), &cfg.checks)
            }
            _ => {
                let mut acc = Accumulator::default();
                for s in &samples {
                    let out = pointwise(id, s, &ctx);
                    acc.record(&s.u, out, sample_fd_error(id, s));
                }
                acc
            }
        };
        reports.push(acc.finish(id, tol));
    }
    let summary = ScenarioSummary {
        model: cfg.model,
        hypersurface: family.label(),
        grid: cfg.grid.clone(),
        samples: points.len(),
        null_tol,
    };
    Ok(ScenarioReport::new(
        summary,
        Environment::new(mode, cfg.seed),
        reports,
    ))
}
