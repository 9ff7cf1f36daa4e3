//! Bivectors of `ℝ⁴_p` in the basis `(e0∧e1, e0∧e2, e0∧e3, e1∧e2, e1∧e3, e2∧e3)`
//! and a tangent-plus-retraction chart on the quadric of decomposable unit bivectors.

use crate::error::{Error, Result};
use crate::manifold::Chart;
use crate::numerics::linalg::dot;
use crate::numerics::{Dual, Mat, Scalar};

/// Index pairs of the bivector basis.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Signs `⟨e_i, e_i⟩` of `ℝ⁴_p`: the last `p` basis vectors are negative.
fn eta(p: usize) -> [f64; 4] {
    let mut e = [1.0; 4];
    for v in e.iter_mut().skip(4 - p.min(4)) {
        *v = -1.0;
    }
    e
}

fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    let mut v = idx;
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0.0;
            }
            if v[i] > v[j] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

/// Diagonal Gram matrix of the induced inner product `⟨⟨·,·⟩⟩_p` on bivectors.
pub fn bivector_metric(p: usize) -> Mat<f64> {
    let e = eta(p);
    Mat::from_diag(&PAIRS.map(|(i, j)| e[i] * e[j]))
}

/// Matrix of the Hodge star on bivectors of `ℝ⁴_p` (columns are images of basis elements).
pub fn hodge_star_matrix(p: usize) -> Mat<f64> {
    let e = eta(p);
    let mut h = Mat::zeros(6, 6);
    for (col, &(i, j)) in PAIRS.iter().enumerate() {
        for (row, &(k, l)) in PAIRS.iter().enumerate() {
            let s = levi_civita([i, j, k, l]);
            if s != 0.0 {
                h[(row, col)] = e[i] * e[j] * s;
            }
        }
    }
    h
}

/// Coordinates of `x ∧ y`.
pub fn wedge<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    PAIRS
        .iter()
        .map(|&(i, j)| x[i] * y[j] - x[j] * y[i])
        .collect()
}

/// `ξ∧ξ / (2 vol)`: vanishes exactly on decomposable bivectors.
pub fn pfaffian<S: Scalar>(xi: &[S]) -> S {
    xi[0] * xi[5] - xi[1] * xi[4] + xi[2] * xi[3]
}

fn pfaffian_gradient<S: Scalar>(xi: &[S]) -> Vec<S> {
    vec![xi[5], -xi[4], xi[3], xi[2], -xi[1], xi[0]]
}

const NEWTON_MAX: usize = 40;

/// Chart `x ↦ ξ₀ + F x + N n(x)` on `{⟨⟨ξ,ξ⟩⟩_p = 1, ξ∧ξ = 0}` around a base bivector.
///
/// `F` is an orthonormal (Euclidean) basis of the complement of the constraint
/// normals `N` at `ξ₀`; `n(x) ∈ ℝ²` is found by Newton's method. The inverse
/// chart is `x = Fᵀ(ξ − ξ₀)`.
#[derive(Clone, Debug)]
pub struct PlueckerChart {
    p: usize,
    base: Vec<f64>,
    frame: Mat<f64>,
    normals: Mat<f64>,
    eta: Mat<f64>,
    chart: Chart,
}

impl PlueckerChart {
    pub fn new(base: &[f64], p: usize, radius: f64) -> Result<Self> {
        if base.len() != 6 {
            return Err(Error::Dimension(format!(
                "bivector needs 6 components, got {}",
                base.len()
            )));
        }
        let eta = bivector_metric(p);
        let q = eta.form(base, base);
        let pf = pfaffian(base);
        if (q - 1.0).abs() > 1e-10 || pf.abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "base bivector violates constraints: <<xi,xi>>-1 = {:e}, Pf = {pf:e}",
                q - 1.0
            )));
        }
        let n1 = eta.matvec(base);
        let n2 = pfaffian_gradient(base);
        let normals = Mat::from_cols(&[n1.clone(), n2.clone()]);

        // orthonormal complement of the normals by Gram–Schmidt on e_0..e_5
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for v in [n1, n2] {
            push_orthonormal(&mut basis, v);
        }
        if basis.len() != 2 {
            return Err(Error::DegenerateImmersion { singular: 0.0 });
        }
        let mut tangent = Vec::new();
        for k in 0..6 {
            let mut e = vec![0.0; 6];
            e[k] = 1.0;
            if push_orthonormal(&mut basis, e) {
                tangent.push(basis.last().expect("just pushed").clone());
            }
            if tangent.len() == 4 {
                break;
            }
        }
        let frame = Mat::from_cols(&tangent);
        Ok(PlueckerChart {
            p,
            base: base.to_vec(),
            frame,
            normals,
            eta,
            chart: Chart::new(format!("pluecker(p={p})"), vec![(-radius, radius); 4]),
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn frame(&self) -> &Mat<f64> {
        &self.frame
    }

    pub fn signature_index(&self) -> usize {
        self.p
    }

    pub fn bivector_metric(&self) -> &Mat<f64> {
        &self.eta
    }

    /// `(⟨⟨ξ,ξ⟩⟩ − 1, Pf ξ)`.
    pub fn constraints<S: Scalar>(&self, xi: &[S]) -> [S; 2] {
        let q = self.eta.map(S::cst).form(xi, xi) - 1.0;
        [q, pfaffian(xi)]
    }

    /// Newton retraction of `ξ₀ + v` along the normal directions; returns the
    /// retracted point and the sequence of constraint residuals.
    pub fn retract_with_history<S: Scalar>(&self, v: &[S]) -> Result<(Vec<S>, Vec<f64>)> {
        let nm = self.normals.map(S::cst);
        let mut n = [S::zero(), S::zero()];
        let mut history = Vec::new();
        let point = |n: &[S; 2]| -> Vec<S> {
            (0..6)
                .map(|i| v[i] + self.base[i] + nm[(i, 0)] * n[0] + nm[(i, 1)] * n[1])
                .collect()
        };
        for it in 0..NEWTON_MAX {
            let xi = point(&n);
            let c = self.constraints(&xi);
            history.push(c[0].re().abs().max(c[1].re().abs()));
            let g1: Vec<S> = self
                .eta
                .map(S::cst)
                .matvec(&xi)
                .iter()
                .map(|&x| x * 2.0)
                .collect();
            let g2 = pfaffian_gradient(&xi);
            let (c1, c2) = (nm.col(0), nm.col(1));
            let j = [
                [dot(&g1, &c1), dot(&g1, &c2)],
                [dot(&g2, &c1), dot(&g2, &c2)],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.re().abs() < 1e-14 {
                return Err(Error::Singular { pivot: det.re() });
            }
            let d0 = (j[1][1] * c[0] - j[0][1] * c[1]) / det;
            let d1 = (j[0][0] * c[1] - j[1][0] * c[0]) / det;
            n[0] -= d0;
            n[1] -= d1;
            if d0.magnitude().max(d1.magnitude()) < 1e-15 && it > 0 {
                return Ok((point(&n), history));
            }
        }
        let xi = point(&n);
        let c = self.constraints(&xi);
        let residual = c[0].magnitude().max(c[1].magnitude());
        if residual < 1e-13 {
            return Ok((xi, history));
        }
        Err(Error::NoConvergence {
            what: "pluecker retraction",
            iterations: NEWTON_MAX,
            residual,
        })
    }

    /// Chart map `x ↦ ξ`.
    pub fn to_bivector<S: Scalar>(&self, x: &[S]) -> Result<Vec<S>> {
        let fm = self.frame.map(S::cst);
        let v = fm.matvec(x);
        Ok(self.retract_with_history(&v)?.0)
    }

    /// Inverse chart `ξ ↦ Fᵀ(ξ − ξ₀)`.
    pub fn from_bivector<S: Scalar>(&self, xi: &[S]) -> Vec<S> {
        let d: Vec<S> = xi.iter().zip(&self.base).map(|(&a, &b)| a - b).collect();
        self.frame.transpose().map(S::cst).matvec(&d)
    }

    /// Columns `∂ξ/∂x^k` at `x`.
    pub fn jacobian<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        let cols = (0..4)
            .map(|k| {
                let xd: Vec<Dual<S>> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Dual::new(v, if i == k { S::one() } else { S::zero() }))
                    .collect();
                Ok(self.to_bivector(&xd)?.iter().map(|d| d.eps).collect())
            })
            .collect::<Result<Vec<Vec<S>>>>()?;
        Ok(Mat::from_cols(&cols))
    }
}

fn push_orthonormal(basis: &mut Vec<Vec<f64>>, mut v: Vec<f64>) -> bool {
    for b in basis.iter() {
        let c = dot(&v, b);
        for (x, y) in v.iter_mut().zip(b) {
            *x -= c * y;
        }
    }
    let n = dot(&v, &v).sqrt();
    if n < 1e-8 {
        return false;
    }
    basis.push(v.into_iter().map(|x| x / n).collect());
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_hodge_star() {
        let h = hodge_star_matrix(0);
        assert_eq!(h.col(0), vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(h.col(1), vec![0.0, 0.0, 0.0, 0.0, -1.0, 0.0]);
        assert!(h.matmul(&h).unwrap().max_abs_diff(&Mat::identity(6)) == 0.0);
        assert_eq!(h.trace(), 0.0);
        assert_eq!(h.asymmetry(), 0.0);
    }

    #[test]
    fn bivector_inner_products() {
        let e = |i: usize| {
            let mut v = [0.0; 4];
            v[i] = 1.0;
            v
        };
        let g = bivector_metric(0);
        let a = wedge(&e(0), &e(1));
        let b = wedge(&e(2), &e(3));
        assert_eq!(g.form(&a, &a), 1.0);
        assert_eq!(g.form(&a, &b), 0.0);
        assert_eq!(pfaffian(&a), 0.0);
        let s: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(pfaffian(&s), 1.0);
    }

    #[test]
    fn retraction_satisfies_constraints() {
        let base = wedge(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
        let ch = PlueckerChart::new(&base, 0, 0.6).unwrap();
        let xi = ch.to_bivector(&[0.1, -0.2, 0.05, 0.3]).unwrap();
        let c = ch.constraints(&xi);
        assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12);
        let back = ch.from_bivector(&xi);
        for (a, b) in back.iter().zip([0.1, -0.2, 0.05, 0.3]) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
