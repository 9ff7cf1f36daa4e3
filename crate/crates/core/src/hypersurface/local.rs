//! Pointwise extrinsic assembly, generic over the scalar type so that the
//! same code yields plain values (`f64`) and exact along-Σ jets (`Jet2`).

use super::immersion::Immersion;
use crate::error::{Error, Result};
use crate::manifold::curvature::christoffel_symbols;
use crate::manifold::{metric_partial, DerivativeMode, EndomorphismField, MetricField};
use crate::numerics::fd::{fd_hessian_vec, fd_jacobian, H1, H2};
use crate::numerics::linalg::dot;
use crate::numerics::{Dual, Jet2, Mat, Scalar};

/// Step for derivatives of assembled quantities along the hypersurface.
pub const H_ALONG: f64 = 1e-2;

/// Derivative mode plus the step multiplier used in finite-difference mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluator {
    pub mode: DerivativeMode,
    pub fd_scale: f64,
}

impl Evaluator {
    pub fn new(mode: DerivativeMode) -> Self {
        Evaluator {
            mode,
            fd_scale: 1.0,
        }
    }

    pub fn jet() -> Self {
        Self::new(DerivativeMode::Jet)
    }

    pub fn fd() -> Self {
        Self::new(DerivativeMode::Fd)
    }

    /// Same mode with every finite-difference step multiplied by `k`.
    pub fn scaled(self, k: f64) -> Self {
        Evaluator {
            fd_scale: self.fd_scale * k,
            ..self
        }
    }

    /// Margin a source point must keep from the chart boundary.
    pub fn source_margin(&self) -> f64 {
        match self.mode {
            DerivativeMode::Jet => 0.0,
            DerivativeMode::Fd => (H_ALONG + H2) * self.fd_scale,
        }
    }
}

/// Ingredients of the local assembly at one source point.
#[derive(Clone, Debug)]
pub struct LocalInputs<S> {
    pub f: Vec<S>,
    /// Columns `∂_a f`.
    pub df: Mat<S>,
    /// `ddf[a][b] = ∂_a∂_b f`.
    pub ddf: Vec<Vec<Vec<S>>>,
    pub g: Mat<S>,
    /// `dg[k] = ∂_k g` at `f`.
    pub dg: Vec<Mat<S>>,
    pub p: Mat<S>,
}

/// Assembled first- and second-order data of the hypersurface at one point,
/// in source coordinates where tangent objects are concerned.
#[derive(Clone, Debug)]
pub struct Local<S> {
    pub f: Vec<S>,
    pub df: Mat<S>,
    pub g: Mat<S>,
    pub p: Mat<S>,
    /// Induced metric `h_ab = g(∂_a f, ∂_b f)`.
    pub h: Mat<S>,
    pub hinv: Mat<S>,
    /// Conormal `ν` with `det[∂_1 f, ∂_2 f, ∂_3 f, v] = ν(v)`.
    pub nu: Vec<S>,
    pub n_plus: Vec<S>,
    pub pn: Vec<S>,
    /// `C₊ = g(PN₊, N₊)`.
    pub c_plus: S,
    /// `X₊ = PN₊ − C₊N₊` as an ambient vector.
    pub x_plus: Vec<S>,
    /// `X₊` in source coordinates.
    pub x_coord: Vec<S>,
    /// Second fundamental form `σ_ab = g(∇̄_a ∂_b f, N₊)`.
    pub sigma: Mat<S>,
    /// Shape operator `A^a_b = h^ac σ_cb`.
    pub shape: Mat<S>,
    pub mean: S,
    pub sigma_norm2: S,
    /// `Tr(Pᵀ A)`, the trace of `v ↦ (P A v)ᵀ`.
    pub trace_pa: S,
    /// `g₋⁻¹ν` (unnormalized `g₋`-normal) and `ν(g₋⁻¹ν)`.
    pub n_minus_raw: Vec<S>,
    pub q_minus: S,
}

/// Four-dimensional cofactor `ν_i = ε_{jkli} a^j b^k c^l`.
fn conormal<S: Scalar>(df: &Mat<S>) -> Vec<S> {
    let minor = |rows: [usize; 3]| {
        let m = |r: usize, c: usize| df[(rows[r], c)];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    // expansion of det[F | v] along the last column
    let rows = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    (0..4)
        .map(|i| {
            let s = minor(rows[i]);
            if (i + 3) % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

pub fn assemble<S: Scalar>(inp: &LocalInputs<S>) -> Result<Local<S>> {
    let df = &inp.df;
    let g = &inp.g;
    let ginv = g.inverse()?;
    let gamma = christoffel_symbols(g, &inp.dg)?;
    let h = df.transpose().matmul(g)?.matmul(df)?;
    let hinv = h.inverse().map_err(|e| match e {
        Error::Singular { pivot } => Error::DegenerateImmersion { singular: pivot },
        other => other,
    })?;
    let nu = conormal(df);
    let nu_up = ginv.matvec(&nu);
    let nn = dot(&nu, &nu_up);
    if nn.re() <= 0.0 {
        return Err(Error::DegenerateImmersion { singular: nn.re() });
    }
    let inv_len = nn.sqrt().recip();
    let n_plus: Vec<S> = nu_up.iter().map(|&v| v * inv_len).collect();
    let pn = inp.p.matvec(&n_plus);
    let gn = g.matvec(&n_plus);
    let c_plus = dot(&gn, &pn);
    let x_plus: Vec<S> = pn
        .iter()
        .zip(&n_plus)
        .map(|(&a, &b)| a - c_plus * b)
        .collect();
    let gx = g.matvec(&x_plus);
    let x_coord = hinv.matvec(&df.transpose().matvec(&gx));

    let sigma = Mat::from_fn(3, 3, |a, b| {
        let mut acc = S::zero();
        for k in 0..4 {
            let mut v = inp.ddf[a][b][k];
            for i in 0..4 {
                for j in 0..4 {
                    v += gamma[k][(i, j)] * df[(i, a)] * df[(j, b)];
                }
            }
            acc += gn[k] * v;
        }
        acc
    });
    let sigma = Mat::from_fn(3, 3, |a, b| (sigma[(a, b)] + sigma[(b, a)]) * 0.5);
    let shape = hinv.matmul(&sigma)?;
    let mean = shape.trace() / 3.0;
    let sigma_norm2 = shape.matmul(&shape)?.trace();
    let gp = g.matmul(&inp.p)?;
    let p_coord = hinv.matmul(&df.transpose().matmul(&gp)?.matmul(df)?)?;
    let trace_pa = p_coord.matmul(&shape)?.trace();

    let n_minus_raw = gp.inverse()?.matvec(&nu);
    let q_minus = dot(&nu, &n_minus_raw);

    Ok(Local {
        f: inp.f.clone(),
        df: df.clone(),
        g: g.clone(),
        p: inp.p.clone(),
        h,
        hinv,
        nu,
        n_plus,
        pn,
        c_plus,
        x_plus,
        x_coord,
        sigma,
        shape,
        mean,
        sigma_norm2,
        trace_pa,
        n_minus_raw,
        q_minus,
    })
}

/// Number of scalar fields tracked along the hypersurface.
pub const FIELD_COUNT: usize = 18;
const SYM: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl<S: Scalar> Local<S> {
    /// `[C₊, H, h (6), σ (6), X₊ (3), Tr(PᵀA)]`.
    pub fn fields(&self) -> Vec<S> {
        let mut v = Vec::with_capacity(FIELD_COUNT);
        v.push(self.c_plus);
        v.push(self.mean);
        v.extend(SYM.iter().map(|&(a, b)| self.h[(a, b)]));
        v.extend(SYM.iter().map(|&(a, b)| self.sigma[(a, b)]));
        v.extend(self.x_coord.iter().copied());
        v.push(self.trace_pa);
        v
    }
}

/// Jets along Σ of the quantities entering the differential identities.
#[derive(Clone, Debug)]
pub struct FieldJets {
    pub c_plus: Jet2,
    pub mean: Jet2,
    pub h: Mat<Jet2>,
    pub sigma: Mat<Jet2>,
    pub x_coord: Vec<Jet2>,
    pub trace_pa: Jet2,
}

impl FieldJets {
    fn from_vec(v: &[Jet2]) -> Self {
        let sym = |off: usize| {
            let mut m = Mat::from_fn(3, 3, |_, _| Jet2::constant(0.0));
            for (k, &(a, b)) in SYM.iter().enumerate() {
                m[(a, b)] = v[off + k];
                m[(b, a)] = v[off + k];
            }
            m
        };
        FieldJets {
            c_plus: v[0],
            mean: v[1],
            h: sym(2),
            sigma: sym(8),
            x_coord: v[14..17].to_vec(),
            trace_pa: v[17],
        }
    }

    /// Christoffel symbols of the induced metric, `[c][(a, b)]`.
    pub fn induced_christoffel(&self) -> Result<Vec<Mat<f64>>> {
        let h = self.h.map(|e| e.value());
        let dh: Vec<Mat<f64>> = (0..3).map(|k| self.h.map(|e| e.d(k))).collect();
        christoffel_symbols(&h, &dh)
    }
}

fn seeded<S: Scalar>(u: &[S], a: usize) -> Vec<Dual<S>> {
    u.iter()
        .enumerate()
        .map(|(i, &v)| Dual::new(v, if i == a { S::one() } else { S::zero() }))
        .collect()
}

fn exact_inputs_jet<I, M, P>(imm: &I, gf: &M, pf: &P, u: &[f64]) -> Result<LocalInputs<Jet2>>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    let uj = Jet2::variables(u);
    let f = imm.map(&uj)?;
    let mut cols = Vec::with_capacity(3);
    for a in 0..3 {
        cols.push(
            imm.map(&seeded(&uj, a))?
                .iter()
                .map(|d| d.eps)
                .collect::<Vec<_>>(),
        );
    }
    let df = Mat::from_cols(&cols);
    let mut ddf = vec![vec![Vec::new(); 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            let inner = seeded(&uj, b);
            let outer: Vec<Dual<Dual<Jet2>>> = inner
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let e = if i == a {
                        Dual::cst(1.0)
                    } else {
                        Dual::cst(0.0)
                    };
                    Dual::new(v, e)
                })
                .collect();
            let v: Vec<Jet2> = imm.map(&outer)?.iter().map(|d| d.eps.eps).collect();
            ddf[a][b] = v.clone();
            ddf[b][a] = v;
        }
    }
    let g = gf.metric(&f)?;
    let dg = (0..4)
        .map(|k| metric_partial(gf, &f, k))
        .collect::<Result<Vec<_>>>()?;
    let p = pf.eval(&f)?;
    Ok(LocalInputs {
        f,
        df,
        ddf,
        g,
        dg,
        p,
    })
}

fn exact_inputs<I, M, P>(imm: &I, gf: &M, pf: &P, u: &[f64]) -> Result<LocalInputs<f64>>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    let fj = imm.map(&Jet2::variables(u))?;
    let f: Vec<f64> = fj.iter().map(|e| e.value()).collect();
    let df = Mat::from_fn(4, 3, |i, a| fj[i].d(a));
    let ddf = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| fj.iter().map(|e| e.dd(a, b)).collect())
                .collect()
        })
        .collect();
    let gj = gf.metric(&Jet2::variables(&f))?;
    let g = gj.map(|e| e.value());
    let dg = (0..4).map(|k| gj.map(|e| e.d(k))).collect();
    let p = pf.eval(&f)?;
    Ok(LocalInputs {
        f,
        df,
        ddf,
        g,
        dg,
        p,
    })
}

fn fd_inputs<I, M, P>(
    imm: &I,
    gf: &M,
    pf: &P,
    u: &[f64],
    scale: f64,
) -> Result<(LocalInputs<f64>, f64)>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    let map = |v: &[f64]| imm.map(v);
    let f = imm.map(u)?;
    let jac = fd_jacobian(map, u, H1 * scale, Some(imm.source()))?;
    let hes = fd_hessian_vec(map, u, H2 * scale, Some(imm.source()))?;
    let df = Mat::from_fn(4, 3, |i, a| jac.value[i][a]);
    let ddf = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| (0..4).map(|i| hes.value[i][a][b]).collect())
                .collect()
        })
        .collect();
    let g = gf.metric(&f)?;
    let flat = |y: &[f64]| gf.metric(y).map(|m| crate::manifold::metric::flatten(&m));
    let gj = fd_jacobian(flat, &f, H1 * scale, Some(gf.chart()))?;
    let dg = (0..4)
        .map(|k| Mat::from_fn(4, 4, |i, j| gj.value[i * 4 + j][k]))
        .collect();
    let p = pf.eval(&f)?;
    let err = jac.error.max(hes.error).max(gj.error);
    Ok((
        LocalInputs {
            f,
            df,
            ddf,
            g,
            dg,
            p,
        },
        err,
    ))
}

/// Everything the checks need at one source point.
#[derive(Clone, Debug)]
pub struct PointData {
    pub u: Vec<f64>,
    pub local: Local<f64>,
    pub jets: FieldJets,
    /// Largest finite-difference error estimate among the inputs (0 in jet mode).
    pub fd_error: f64,
}

/// Evaluates the local assembly and its along-Σ jets at `u`.
pub fn evaluate_point<I, M, P>(
    imm: &I,
    gf: &M,
    pf: &P,
    u: &[f64],
    ev: &Evaluator,
) -> Result<PointData>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    imm.source().check(u, ev.source_margin())?;
    match ev.mode {
        DerivativeMode::Jet => {
            let local = assemble(&exact_inputs(imm, gf, pf, u)?)?;
            let lj = assemble(&exact_inputs_jet(imm, gf, pf, u)?)?;
            Ok(PointData {
                u: u.to_vec(),
                local,
                jets: FieldJets::from_vec(&lj.fields()),
                fd_error: 0.0,
            })
        }
        DerivativeMode::Fd => {
            let s = ev.fd_scale;
            let (inp, err0) = fd_inputs(imm, gf, pf, u, s)?;
            let local = assemble(&inp)?;
            let fields = |v: &[f64]| -> Result<Vec<f64>> {
                let (inp, _) = fd_inputs(imm, gf, pf, v, s)?;
                Ok(assemble(&inp)?.fields())
            };
            let jac = fd_jacobian(fields, u, H_ALONG * s, Some(imm.source()))?;
            let hes = fd_hessian_vec(fields, u, H_ALONG * s, Some(imm.source()))?;
            let vals = local.fields();
            let jets: Vec<Jet2> = (0..FIELD_COUNT)
                .map(|c| Jet2::from_parts(vals[c], &jac.value[c], &hes.value[c]))
                .collect::<Result<_>>()?;
            Ok(PointData {
                u: u.to_vec(),
                local,
                jets: FieldJets::from_vec(&jets),
                fd_error: err0.max(jac.error).max(hes.error),
            })
        }
    }
}

/// The plain local assembly at `u` (inputs exact in jet mode, differenced in fd mode).
pub fn local_at<I, M, P>(imm: &I, gf: &M, pf: &P, u: &[f64], ev: &Evaluator) -> Result<Local<f64>>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    match ev.mode {
        DerivativeMode::Jet => assemble(&exact_inputs(imm, gf, pf, u)?),
        DerivativeMode::Fd => assemble(&fd_inputs(imm, gf, pf, u, ev.fd_scale)?.0),
    }
}
