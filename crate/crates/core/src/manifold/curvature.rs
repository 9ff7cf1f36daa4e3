//! Levi-Civita connection and curvature from a metric 2-jet.
//!
//! Sign convention: `R(u,v)w = ∇_u∇_v w − ∇_v∇_u w − ∇_[u,v] w`, stored as
//! `R^a_bcd` with `R(∂_c,∂_d)∂_b = R^a_bcd ∂_a`, lowered on the first index.
//! `Ric_bd = R^a_bad`, so round spheres have positive scalar curvature.

use serde::Serialize;

use super::metric::{metric_jet, DerivativeMode, EndomorphismField, MetricField, MetricJet};
use crate::error::{Error, Result};
use crate::numerics::fd::{fd_jacobian, H1};
use crate::numerics::{eig_sym, Dual, Jet2, Mat, Scalar};

pub type Tensor3 = Vec<Vec<Vec<f64>>>;
pub type Tensor4 = Vec<Vec<Vec<Vec<f64>>>>;

/// Threshold below which a metric eigenvalue counts as zero.
pub const SIGNATURE_EPS: f64 = 1e-10;

/// `Γ^k_ij` from `g` and `∂g`, as `gamma[k][(i, j)]`.
pub fn christoffel_symbols<S: Scalar>(g: &Mat<S>, dg: &[Mat<S>]) -> Result<Vec<Mat<S>>> {
    let n = g.rows();
    let ginv = g.inverse()?;
    // first-kind symbols Γ_l,ij = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let first: Vec<Mat<S>> = (0..n)
        .map(|l| {
            Mat::from_fn(n, n, |i, j| {
                (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]) * 0.5
            })
        })
        .collect();
    Ok((0..n)
        .map(|k| {
            Mat::from_fn(n, n, |i, j| {
                let mut acc = S::zero();
                for (l, fl) in first.iter().enumerate() {
                    acc += ginv[(k, l)] * fl[(i, j)];
                }
                acc
            })
        })
        .collect())
}

/// Christoffel symbols at a point as plain arrays `[k][i][j]`.
pub fn christoffel<M: MetricField>(field: &M, x: &[f64], mode: DerivativeMode) -> Result<Tensor3> {
    let mj = metric_jet(field, x, mode)?;
    Ok(to_t3(&christoffel_symbols(&mj.g, &mj.dg)?))
}

fn to_t3(g: &[Mat<f64>]) -> Tensor3 {
    g.iter().map(|m| m.to_rows()).collect()
}

/// Eigenvalue-sign signature `(negative, positive)`. Zero eigenvalues are an
/// error unless `allow_degenerate`.
pub fn signature(g: &Mat<f64>, allow_degenerate: bool) -> Result<(usize, usize)> {
    let e = eig_sym(g)?;
    let scale = g.max_abs().max(1.0);
    let mut neg = 0;
    let mut pos = 0;
    for &v in &e.values {
        if v > SIGNATURE_EPS * scale {
            pos += 1;
        } else if v < -SIGNATURE_EPS * scale {
            neg += 1;
        } else if !allow_degenerate {
            return Err(Error::DegenerateMetric { eigenvalue: v });
        }
    }
    Ok((neg, pos))
}

/// Everything the curvature pipeline derives at one point.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub point: Vec<f64>,
    pub metric: Vec<Vec<f64>>,
    /// `Γ^k_ij` as `[k][i][j]`.
    pub christoffel: Tensor3,
    /// Fully covariant `R_abcd`.
    pub riemann: Tensor4,
    pub ricci: Vec<Vec<f64>>,
    pub scalar: f64,
    /// Only present in dimension 4.
    pub weyl: Option<Tensor4>,
    pub signature: (usize, usize),
    pub fd_error: f64,
}

impl GeometryReport {
    pub fn dim(&self) -> usize {
        self.point.len()
    }

    /// `max |Ric − (R/n) g|`.
    pub fn einstein_defect(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                m = m.max((self.ricci[i][j] - self.scalar / n as f64 * self.metric[i][j]).abs());
            }
        }
        m
    }

    /// Largest violation of the algebraic Riemann symmetries and first Bianchi identity.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim();
        let r = &self.riemann;
        let mut m: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = r[a][b][c][d];
                        m = m
                            .max((v + r[b][a][c][d]).abs())
                            .max((v + r[a][b][d][c]).abs())
                            .max((v - r[c][d][a][b]).abs())
                            .max((v + r[a][c][d][b] + r[a][d][b][c]).abs());
                    }
                }
            }
        }
        m
    }

    pub fn weyl_max(&self) -> Option<f64> {
        self.weyl.as_ref().map(max_abs4)
    }
}

pub(crate) fn max_abs4(t: &Tensor4) -> f64 {
    t.iter()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// `∂_m Γ` for each `m`, by pushing a dual perturbation through the
/// Christoffel computation.
fn christoffel_derivatives(mj: &MetricJet) -> Result<Vec<Vec<Mat<f64>>>> {
    let n = mj.dim();
    (0..n)
        .map(|m| {
            let g = Mat::from_fn(n, n, |i, j| Dual::new(mj.g[(i, j)], mj.dg[m][(i, j)]));
            let dg: Vec<Mat<Dual<f64>>> = (0..n)
                .map(|k| {
                    Mat::from_fn(n, n, |i, j| {
                        Dual::new(mj.dg[k][(i, j)], mj.ddg[m][k][(i, j)])
                    })
                })
                .collect();
            Ok(christoffel_symbols(&g, &dg)?
                .iter()
                .map(|c| c.map(|d| d.eps))
                .collect())
        })
        .collect()
}

/// Full curvature package from a metric 2-jet.
pub fn curvature_from_jet(mj: &MetricJet, allow_degenerate: bool) -> Result<GeometryReport> {
    let n = mj.dim();
    let gamma = christoffel_symbols(&mj.g, &mj.dg)?;
    // dgamma[m][a] is the matrix ∂_m Γ^a_(..)
    let dgamma = christoffel_derivatives(mj)?;
    let ginv = mj.g.inverse()?;

    // R^a_bcd
    let mut rup = vec![vec![vec![vec![0.0; n]; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut v = dgamma[c][a][(d, b)] - dgamma[d][a][(c, b)];
                    for e in 0..n {
                        v += gamma[a][(c, e)] * gamma[e][(d, b)]
                            - gamma[a][(d, e)] * gamma[e][(c, b)];
                    }
                    rup[a][b][c][d] = v;
                }
            }
        }
    }
    let mut riemann = vec![vec![vec![vec![0.0; n]; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    riemann[a][b][c][d] = (0..n).map(|e| mj.g[(a, e)] * rup[e][b][c][d]).sum();
                }
            }
        }
    }
    let ricci: Vec<Vec<f64>> = (0..n)
        .map(|b| {
            (0..n)
                .map(|d| (0..n).map(|a| rup[a][b][a][d]).sum())
                .collect()
        })
        .collect();
    let mut scalar = 0.0;
    for i in 0..n {
        for j in 0..n {
            scalar += ginv[(i, j)] * ricci[i][j];
        }
    }
    let weyl = (n == 4).then(|| weyl_tensor(&mj.g, &riemann, &ricci, scalar));
    Ok(GeometryReport {
        point: mj.point.clone(),
        metric: mj.g.to_rows(),
        christoffel: to_t3(&gamma),
        riemann,
        ricci,
        scalar,
        weyl,
        signature: signature(&mj.g, allow_degenerate)?,
        fd_error: mj.fd_error,
    })
}

/// Weyl tensor in dimension 4.
fn weyl_tensor(g: &Mat<f64>, r: &Tensor4, ric: &[Vec<f64>], scalar: f64) -> Tensor4 {
    let n = 4;
    let mut w = vec![vec![vec![vec![0.0; n]; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let kn = g[(a, c)] * ric[b][d] - g[(a, d)] * ric[b][c] - g[(b, c)] * ric[a][d]
                        + g[(b, d)] * ric[a][c];
                    let gg = g[(a, c)] * g[(b, d)] - g[(a, d)] * g[(b, c)];
                    w[a][b][c][d] = r[a][b][c][d] - 0.5 * kn + scalar / 6.0 * gg;
                }
            }
        }
    }
    w
}

/// Curvature of a metric field at `x`.
pub fn curvature<M: MetricField>(
    field: &M,
    x: &[f64],
    mode: DerivativeMode,
) -> Result<GeometryReport> {
    curvature_from_jet(&metric_jet(field, x, mode)?, false)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinReport {
    pub einstein: bool,
    /// Mean scalar curvature over the samples.
    pub rbar: f64,
    /// Largest `|Ric − (R/n) g|` seen.
    pub max_residual: f64,
    /// Largest deviation of a sample's scalar curvature from `rbar`.
    pub scalar_spread: f64,
}

/// Checks `Ric = (R/n) g` on every sample.
pub fn is_einstein<M: MetricField>(
    field: &M,
    samples: &[Vec<f64>],
    tol: f64,
    mode: DerivativeMode,
) -> Result<EinsteinReport> {
    if samples.len() < 8 {
        return Err(Error::InvalidParameter(format!(
            "is_einstein needs at least 8 samples, got {}",
            samples.len()
        )));
    }
    let mut scalars = Vec::with_capacity(samples.len());
    let mut max_residual: f64 = 0.0;
    for x in samples {
        let rep = curvature(field, x, mode)?;
        max_residual = max_residual.max(rep.einstein_defect());
        scalars.push(rep.scalar);
    }
    let rbar = scalars.iter().sum::<f64>() / scalars.len() as f64;
    let scalar_spread = scalars.iter().fold(0.0f64, |m, s| m.max((s - rbar).abs()));
    Ok(EinsteinReport {
        einstein: max_residual <= tol,
        rbar,
        max_residual,
        scalar_spread,
    })
}

/// `(∇_k T)^i_j = ∂_k T^i_j + Γ^i_kl T^l_j − Γ^l_kj T^i_l`, as `[k][i][j]`.
pub fn covariant_derivative_11<M: MetricField, T: EndomorphismField>(
    field: &M,
    t: &T,
    x: &[f64],
    mode: DerivativeMode,
) -> Result<Tensor3> {
    let n = field.dim();
    let gamma = christoffel(field, x, mode)?;
    let (tv, dt): (Mat<f64>, Vec<Mat<f64>>) = match mode {
        DerivativeMode::Jet => {
            let tj = t.eval(&Jet2::variables(x))?;
            (
                tj.map(|e| e.value()),
                (0..n).map(|k| tj.map(|e| e.d(k))).collect(),
            )
        }
        DerivativeMode::Fd => {
            let tv = t.eval(x)?;
            let jac = fd_jacobian(
                |y| t.eval(y).map(|m| super::metric::flatten(&m)),
                x,
                H1,
                Some(t.chart()),
            )?;
            let dt = (0..n)
                .map(|k| Mat::from_fn(n, n, |i, j| jac.value[i * n + j][k]))
                .collect();
            (tv, dt)
        }
    };
    let mut out = vec![vec![vec![0.0; n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = dt[k][(i, j)];
                for l in 0..n {
                    v += gamma[i][k][l] * tv[(l, j)] - gamma[l][k][j] * tv[(i, l)];
                }
                out[k][i][j] = v;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::chart::Chart;

    struct Sphere;

    impl MetricField for Sphere {
        fn chart(&self) -> &Chart {
            static C: std::sync::OnceLock<Chart> = std::sync::OnceLock::new();
            C.get_or_init(|| Chart::new("s2", vec![(0.0, std::f64::consts::PI), (-4.0, 4.0)]))
        }
        fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
            let s = x[0].sin();
            Ok(Mat::from_diag(&[S::one(), s * s]))
        }
    }

    #[test]
    fn round_sphere_connection_and_curvature() {
        let x = [0.8, 0.3];
        let g = christoffel(&Sphere, &x, DerivativeMode::Jet).unwrap();
        assert!((g[0][1][1] + 0.8f64.sin() * 0.8f64.cos()).abs() < 1e-15);
        let r = curvature(&Sphere, &x, DerivativeMode::Jet).unwrap();
        assert!((r.scalar - 2.0).abs() < 1e-12);
        assert!(r.weyl.is_none());
        assert_eq!(r.signature, (0, 2));
    }

    #[test]
    fn fd_mode_agrees() {
        let r = curvature(&Sphere, &[1.1, 0.0], DerivativeMode::Fd).unwrap();
        assert!((r.scalar - 2.0).abs() < 1e-6);
        assert!(r.fd_error > 0.0);
    }
}
