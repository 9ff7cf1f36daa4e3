//! Pointwise residuals of the extrinsic identities.
//!
//! Tangent vectors are handled in source coordinates; norms are taken with
//! the induced metric `h`.

use super::frame::NullFrameData;
use super::immersion::{Immersion, InducedMetric};
use super::local::{Evaluator, PointData};
use super::shape::{NullFrame, ShapeData};
use crate::error::Result;
use crate::manifold::{curvature_from_jet, metric_jet_scaled, GeometryReport, MetricField};
use crate::numerics::Mat;

fn h_norm(h: &Mat<f64>, v: &[f64]) -> f64 {
    h.form(v, v).max(0.0).sqrt()
}

fn frame_vectors(sd: &ShapeData) -> Vec<Vec<f64>> {
    (0..3).map(|j| sd.frame_coords.col(j)).collect()
}

/// Curvature of the induced metric at `u`, through the ambient curvature pipeline.
pub fn induced_scalar_curvature<I: Immersion, M: MetricField>(
    imm: &I,
    g: &M,
    u: &[f64],
    ev: &Evaluator,
) -> Result<GeometryReport> {
    let induced = InducedMetric::new(imm, g);
    curvature_from_jet(
        &metric_jet_scaled(&induced, u, ev.mode, ev.fd_scale)?,
        false,
    )
}

/// `|∇C₊ + 2A₊X₊|`.
pub fn gradient_c_residual(pd: &PointData) -> f64 {
    let l = &pd.local;
    let dc: Vec<f64> = (0..3).map(|a| pd.jets.c_plus.d(a)).collect();
    let grad = l.hinv.matvec(&dc);
    let ax = l.shape.matvec(&l.x_coord);
    let diff: Vec<f64> = grad.iter().zip(&ax).map(|(g, a)| g + 2.0 * a).collect();
    h_norm(&l.h, &diff)
}

/// `|∇_ξX₊ − (−(PA₊ξ)ᵀ + C₊A₊ξ)|`, maximized over an orthonormal frame.
pub fn x_derivative_residual(pd: &PointData, sd: &ShapeData) -> Result<f64> {
    let l = &pd.local;
    let gamma = pd.jets.induced_christoffel()?;
    let gp = l.g.matmul(&l.p)?;
    let proj = l.hinv.matmul(&l.df.transpose().matmul(&gp)?)?;
    let mut worst: f64 = 0.0;
    for xi in frame_vectors(sd) {
        let lhs: Vec<f64> = (0..3)
            .map(|b| {
                (0..3)
                    .map(|a| {
                        let mut v = pd.jets.x_coord[b].d(a);
                        for c in 0..3 {
                            v += gamma[b][(a, c)] * l.x_coord[c];
                        }
                        xi[a] * v
                    })
                    .sum()
            })
            .collect();
        let axi = l.shape.matvec(&xi);
        let pt = proj.matvec(&l.df.matvec(&axi));
        let diff: Vec<f64> = (0..3).map(|b| lhs[b] + pt[b] - l.c_plus * axi[b]).collect();
        worst = worst.max(h_norm(&l.h, &diff));
    }
    Ok(worst)
}

fn hessian_c(pd: &PointData, gamma: &[Mat<f64>], u: &[f64], v: &[f64]) -> f64 {
    let c = &pd.jets.c_plus;
    let mut s = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let mut hab = c.dd(a, b);
            for k in 0..3 {
                hab -= gamma[k][(a, b)] * c.d(k);
            }
            s += u[a] * v[b] * hab;
        }
    }
    s
}

/// `(∇_a σ)_bc` in source coordinates.
fn nabla_sigma(pd: &PointData, gamma: &[Mat<f64>]) -> [[[f64; 3]; 3]; 3] {
    let sj = &pd.jets.sigma;
    let s = &pd.local.sigma;
    let mut out = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut v = sj[(b, c)].d(a);
                for d in 0..3 {
                    v -= gamma[d][(a, b)] * s[(d, c)] + gamma[d][(a, c)] * s[(b, d)];
                }
                out[a][b][c] = v;
            }
        }
    }
    out
}

/// Right-hand side of the Hessian identity for `C₊`.
fn hessian_rhs(
    pd: &PointData,
    ns: &[[[f64; 3]; 3]; 3],
    gp: &Mat<f64>,
    u: &[f64],
    v: &[f64],
) -> f64 {
    let l = &pd.local;
    let mut dsig = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                dsig += u[a] * l.x_coord[b] * v[c] * ns[a][b][c];
            }
        }
    }
    let au = l.shape.matvec(u);
    let av = l.shape.matvec(v);
    let gaa = l.h.form(&au, &av);
    let pa = gp.form(&l.df.matvec(&au), &l.df.matvec(&av));
    -2.0 * dsig - 2.0 * l.c_plus * gaa + 2.0 * pa
}

/// `|∇²C₊(u,v) − RHS(u,v)|`, maximized over pairs from an orthonormal frame.
pub fn hessian_c_residual(pd: &PointData, sd: &ShapeData) -> Result<f64> {
    let gamma = pd.jets.induced_christoffel()?;
    let ns = nabla_sigma(pd, &gamma);
    let gp = pd.local.g.matmul(&pd.local.p)?;
    let fv = frame_vectors(sd);
    let mut worst: f64 = 0.0;
    for u in &fv {
        for v in &fv {
            let r = (hessian_c(pd, &gamma, u, v) - hessian_rhs(pd, &ns, &gp, u, v)).abs();
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// `(ΔC₊, −6X₊(H) − 2C₊|σ|² + 2Tr(PᵀA²))`.
pub fn laplacian_c_sides(pd: &PointData, sd: &ShapeData) -> Result<(f64, f64)> {
    let l = &pd.local;
    let gamma = pd.jets.induced_christoffel()?;
    let c = &pd.jets.c_plus;
    let mut lap = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let mut hab = c.dd(a, b);
            for k in 0..3 {
                hab -= gamma[k][(a, b)] * c.d(k);
            }
            lap += l.hinv[(a, b)] * hab;
        }
    }
    let xh: f64 = (0..3).map(|a| l.x_coord[a] * pd.jets.mean.d(a)).sum();
    let rhs = -6.0 * xh - 2.0 * l.c_plus * l.sigma_norm2 + 2.0 * sd.trace_pt_a2();
    Ok((lap, rhs))
}

/// `½R̄ + 9H² − |σ|²`.
pub fn gauss_prediction(sd: &ShapeData, rbar: f64) -> f64 {
    0.5 * rbar + 9.0 * sd.mean_h * sd.mean_h - sd.sigma_norm2
}

/// `2λ₁λ₂cos2θ − 2(λ₁² + λ₂²)cos²θ`.
pub fn null_scalar_formula(nf: &NullFrame) -> f64 {
    let (l1, l2, t) = (nf.lambda1, nf.lambda2, nf.theta);
    2.0 * l1 * l2 * (2.0 * t).cos() - 2.0 * (l1 * l1 + l2 * l2) * t.cos().powi(2)
}

/// `e₃[(λ₁ − λ₂)cosθ]`, using `(λ₁ − λ₂)cosθ = Tr(PᵀA)`.
pub fn e3_trace_pa(pd: &PointData, nf: &NullFrame) -> f64 {
    (0..3)
        .map(|a| nf.coords[2][a] * pd.jets.trace_pa.d(a))
        .sum()
}

/// The null scalar formula with the `e₃` transport term restored.
pub fn null_scalar_corrected(pd: &PointData, nf: &NullFrame) -> f64 {
    null_scalar_formula(nf) + 2.0 * e3_trace_pa(pd, nf)
}

/// `½R̄ + (λ₁+λ₂)² + (λ₁−λ₂)²cos2θ`.
pub fn null_identity_expression(nf: &NullFrame, rbar: f64) -> f64 {
    let (l1, l2) = (nf.lambda1, nf.lambda2);
    0.5 * rbar + (l1 + l2).powi(2) + (l1 - l2).powi(2) * (2.0 * nf.theta).cos()
}

/// Defect of `Pe₁ = cosθe₁ + sinθe₂`, `Pe₂ = sinθe₁ − cosθe₂`.
pub fn principal_angle_residual(sd: &ShapeData, nf: &NullFrame) -> f64 {
    let (c, s) = (nf.theta.cos(), nf.theta.sin());
    let pe1 = sd.p_tan.matvec(&nf.e[0]);
    let pe2 = sd.p_tan.matvec(&nf.e[1]);
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        worst = worst
            .max((pe1[i] - c * nf.e[0][i] - s * nf.e[1][i]).abs())
            .max((pe2[i] - s * nf.e[0][i] + c * nf.e[1][i]).abs());
    }
    worst
}

/// Largest defect among the connection relations of the null frame.
pub fn connection_residual(nfd: &NullFrameData) -> f64 {
    let w = &nfd.omega;
    let (l1, l2) = (nfd.lambda1, nfd.lambda2);
    let (c, s) = (nfd.theta.cos(), nfd.theta.sin());
    [
        w[0][1][2] - l1 * s,
        w[0][0][2] - l1 * c,
        w[1][0][2] - l2 * s,
        w[1][1][2] + l2 * c,
        w[2][0][2],
        w[2][1][2],
        nfd.k_coef + 0.5 * nfd.dtheta[0],
        nfd.mu_coef + 0.5 * nfd.dtheta[1],
        nfd.nu_coef + 0.5 * nfd.dtheta[2],
    ]
    .iter()
    .fold(nfd.compatibility_defect(), |m, v| m.max(v.abs()))
}

/// Two-sided null classification: `(classification mismatch, N₋ ∦ PN₊ defect)`.
///
/// `g₋(N₋, N₋)` is computed from the independent `g₋`-normal `g₋⁻¹ν`,
/// normalized in `g₊`.
pub fn null_normal_residual(pd: &PointData, c_tol: f64, minus_tol: f64) -> (bool, f64) {
    let l = &pd.local;
    let raw = &l.n_minus_raw;
    let len2 = l.g.form(raw, raw);
    let q = l.q_minus / len2;
    let agree = (l.c_plus.abs() < c_tol) == (q.abs() < minus_tol);
    let along = l.g.form(raw, &l.pn);
    let perp: Vec<f64> = raw.iter().zip(&l.pn).map(|(r, p)| r - along * p).collect();
    let defect = l.g.form(&perp, &perp).max(0.0).sqrt() / len2.sqrt();
    (agree, defect)
}

/// `(λ₁² − λ₂²)cosθ`, which vanishes on null CMC hypersurfaces.
pub fn cmc_angle_expression(nf: &NullFrame) -> f64 {
    (nf.lambda1 * nf.lambda1 - nf.lambda2 * nf.lambda2) * nf.theta.cos()
}

/// `|A₊(PN₊)| / (1 + |A₊|)`.
pub fn trivial_direction_residual(sd: &ShapeData, nf: &NullFrame) -> f64 {
    let a_norm = sd.lambdas.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    nf.trivial_residual / (1.0 + a_norm)
}

/// Gauge-invariant summary of the extrinsic data at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    /// Shape-operator eigenvalues, ascending, for the given orientation.
    pub lambdas: Vec<f64>,
    pub mean: f64,
    pub sigma_norm2: f64,
    pub c_plus: f64,
    pub cos2theta: Option<f64>,
    pub sin_gap: Option<f64>,
}

impl Invariants {
    pub fn of(sd: &ShapeData) -> Self {
        Invariants {
            lambdas: sd.lambdas.clone(),
            mean: sd.mean_h,
            sigma_norm2: sd.sigma_norm2,
            c_plus: sd.c_plus,
            cos2theta: sd.null.as_ref().map(|n| (2.0 * n.theta).cos()),
            sin_gap: sd
                .null
                .as_ref()
                .map(|n| n.theta.sin().abs() * (n.lambda1 - n.lambda2)),
        }
    }

    /// Flips the orientation: `A → −A`.
    pub fn flipped(&self) -> Self {
        let mut l: Vec<f64> = self.lambdas.iter().map(|v| -v).collect();
        l.sort_by(f64::total_cmp);
        Invariants {
            lambdas: l,
            mean: -self.mean,
            ..self.clone()
        }
    }

    /// Largest componentwise difference.
    pub fn distance(&self, other: &Invariants) -> f64 {
        let mut d: f64 = self
            .lambdas
            .iter()
            .zip(&other.lambdas)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()));
        d = d
            .max((self.mean - other.mean).abs())
            .max((self.sigma_norm2 - other.sigma_norm2).abs())
            .max((self.c_plus - other.c_plus).abs());
        for (a, b) in [
            (self.cos2theta, other.cos2theta),
            (self.sin_gap, other.sin_gap),
        ] {
            match (a, b) {
                (Some(x), Some(y)) => d = d.max((x - y).abs()),
                (None, None) => {}
                _ => d = f64::INFINITY,
            }
        }
        d
    }
}
