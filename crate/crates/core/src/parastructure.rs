//! Almost paracomplex structures: axiom checks and the neutral metric `g₋ = g(P·,·)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::curvature::max_abs4;
use crate::manifold::{
    covariant_derivative_11, curvature, signature, Chart, DerivativeMode, EndomorphismField,
    MetricField,
};
use crate::numerics::{eig_sym, Mat, Scalar};

/// Worst-case axiom residuals of a candidate structure over a sample set.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ParacomplexReport {
    pub samples: usize,
    /// `max |P² − Id|`.
    pub involution: f64,
    /// `max |PᵀgP − g|`.
    pub isometry: f64,
    /// `max |∇̄P|`.
    pub parallel: f64,
    /// `max |tr P|`.
    pub trace: f64,
    /// Distance of the sorted eigenvalues from `(−1, −1, 1, 1)`.
    pub eigenvalues: f64,
}

impl ParacomplexReport {
    pub fn max_residual(&self) -> f64 {
        self.involution
            .max(self.isometry)
            .max(self.parallel)
            .max(self.trace)
            .max(self.eigenvalues)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Eigenvalues of a `g`-self-adjoint endomorphism, via `L⁻¹ (gP) L⁻ᵀ` with `g = LLᵀ`.
fn structure_eigenvalues(g: &Mat<f64>, p: &Mat<f64>) -> Result<Vec<f64>> {
    let n = g.rows();
    let mut l = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = g[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 {
            return Err(Error::DegenerateMetric { eigenvalue: d });
        }
        l[(j, j)] = d.sqrt();
        for i in j + 1..n {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / l[(j, j)];
        }
    }
    let li = l.inverse()?;
    let gp = g.matmul(p)?;
    let m = li.matmul(&gp)?.matmul(&li.transpose())?;
    let sym = Mat::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    Ok(eig_sym(&sym)?.values)
}

/// Checks `P² = Id`, isometry, `∇̄P = 0`, `tr P = 0` and equal-rank eigenspaces.
pub fn verify_paracomplex<M: MetricField, P: EndomorphismField>(
    p: &P,
    g: &M,
    samples: &[Vec<f64>],
    mode: DerivativeMode,
) -> Result<ParacomplexReport> {
    let mut r = ParacomplexReport {
        samples: samples.len(),
        ..Default::default()
    };
    for x in samples {
        let pm = p.eval(x)?;
        let gm = g.metric(x)?;
        let n = pm.rows();
        r.involution = r
            .involution
            .max(pm.matmul(&pm)?.max_abs_diff(&Mat::identity(n)));
        r.isometry = r
            .isometry
            .max(pm.transpose().matmul(&gm)?.matmul(&pm)?.max_abs_diff(&gm));
        let nabla = covariant_derivative_11(g, p, x, mode)?;
        let nm = nabla
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |a, b| a.max(b.abs()));
        r.parallel = r.parallel.max(nm);
        r.trace = r.trace.max(pm.trace().abs());
        let ev = structure_eigenvalues(&gm, &pm)?;
        let half = n / 2;
        let dev = ev
            .iter()
            .enumerate()
            .map(|(i, v)| (v - if i < half { -1.0 } else { 1.0 }).abs())
            .fold(0.0, f64::max);
        r.eigenvalues = r.eigenvalues.max(dev);
    }
    Ok(r)
}

/// The neutral metric `(g₋)_ij = g_ik P^k_j`.
#[derive(Clone, Copy, Debug)]
pub struct NeutralMetric<'a, M, P> {
    pub base: &'a M,
    pub p: &'a P,
}

impl<'a, M: MetricField, P: EndomorphismField> NeutralMetric<'a, M, P> {
    /// Wraps without checking the axioms.
    pub fn new(base: &'a M, p: &'a P) -> Self {
        NeutralMetric { base, p }
    }
}

impl<M: MetricField, P: EndomorphismField> MetricField for NeutralMetric<'_, M, P> {
    fn chart(&self) -> &Chart {
        self.base.chart()
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        self.base.metric(x)?.matmul(&self.p.eval(x)?)
    }
}

/// Builds `g₋` after checking the paracomplex axioms and the neutral signature on `samples`.
pub fn neutral_metric<'a, M: MetricField, P: EndomorphismField>(
    g: &'a M,
    p: &'a P,
    samples: &[Vec<f64>],
    tol: f64,
    mode: DerivativeMode,
) -> Result<NeutralMetric<'a, M, P>> {
    let rep = verify_paracomplex(p, g, samples, mode)?;
    if !rep.passes(tol) {
        return Err(Error::AxiomFailure(format!(
            "residuals P²={:e}, isometry={:e}, ∇P={:e}, trace={:e}, eigen={:e}",
            rep.involution, rep.isometry, rep.parallel, rep.trace, rep.eigenvalues
        )));
    }
    let nm = NeutralMetric::new(g, p);
    for x in samples {
        let gm = nm.metric(x)?;
        let sig = signature(&gm, false)?;
        if sig != (2, 2) {
            return Err(Error::AxiomFailure(format!(
                "g₋ has signature {sig:?} at {x:?}"
            )));
        }
    }
    Ok(nm)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NeutralReport {
    pub samples: usize,
    /// `max |R(g₋)|`.
    pub scalar: f64,
    /// `max |W(g₋)|`.
    pub weyl: f64,
    /// `max |Γ(g₊) − Γ(g₋)|`.
    pub christoffel: f64,
    /// `max |Ric(g₊) − Ric(g₋)|`.
    pub ricci: f64,
    /// `max |g₋ − g₋ᵀ|`.
    pub asymmetry: f64,
    pub signature_ok: bool,
    pub fd_error: f64,
}

/// Scalar-flat, conformally flat, shared connection and Ricci tensor.
pub fn verify_neutral_properties<M: MetricField, P: EndomorphismField>(
    nm: &NeutralMetric<'_, M, P>,
    samples: &[Vec<f64>],
    mode: DerivativeMode,
) -> Result<NeutralReport> {
    let mut r = NeutralReport {
        samples: samples.len(),
        signature_ok: true,
        ..Default::default()
    };
    for x in samples {
        let gm = nm.metric(x)?;
        r.asymmetry = r.asymmetry.max(gm.asymmetry());
        let plus = curvature(nm.base, x, mode)?;
        let minus = curvature(nm, x, mode)?;
        r.signature_ok &= minus.signature == (2, 2);
        r.scalar = r.scalar.max(minus.scalar.abs());
        r.weyl = r.weyl.max(minus.weyl.as_ref().map_or(0.0, max_abs4));
        let dc = plus
            .christoffel
            .iter()
            .flatten()
            .flatten()
            .zip(minus.christoffel.iter().flatten().flatten())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        r.christoffel = r.christoffel.max(dc);
        let dr = plus
            .ricci
            .iter()
            .flatten()
            .zip(minus.ricci.iter().flatten())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        r.ricci = r.ricci.max(dr);
        r.fd_error = r.fd_error.max(plus.fd_error).max(minus.fd_error);
    }
    Ok(r)
}
