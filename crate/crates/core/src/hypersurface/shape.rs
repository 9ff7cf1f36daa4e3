use std::f64::consts::TAU;

use serde::Serialize;

use super::local::Local;
use crate::error::Result;
use crate::numerics::linalg::dot;
use crate::numerics::{eig_sym, Mat};

/// Default threshold on `|C₊|` below which a point counts as null.
pub const NULL_TOL: f64 = 1e-7;
/// Relative gap below which the two non-trivial principal curvatures are treated as equal.
pub const EQUAL_CURVATURE_TOL: f64 = 1e-7;

/// Principal frame adapted to a null point: `e₃ ∝ PN₊`, `e₁, e₂` principal in `{N₊, PN₊}^⊥`.
#[derive(Clone, Debug, Serialize)]
pub struct NullFrame {
    /// Frame vectors in orthonormal-frame coordinates.
    pub e: [Vec<f64>; 3],
    /// Frame vectors in source coordinates.
    pub coords: [Vec<f64>; 3],
    pub lambda1: f64,
    pub lambda2: f64,
    /// `g(A e₃, e₃)`; zero at a genuine null point.
    pub lambda3: f64,
    pub theta: f64,
    /// Set when `λ₁ = λ₂` and the frame was fixed by diagonalizing `P` instead.
    pub gauge: bool,
    /// `|A₊ e₃|`.
    pub trivial_residual: f64,
}

/// The extrinsic package at one point.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeData {
    pub point: Vec<f64>,
    pub ambient_point: Vec<f64>,
    /// Orthonormal tangent frame, ambient components (4×3, columns).
    pub tangent_basis: Vec<Vec<f64>>,
    #[serde(skip)]
    pub frame_coords: Mat<f64>,
    pub n_plus: Vec<f64>,
    pub n_minus: Option<Vec<f64>>,
    pub eps_minus: i8,
    pub c_plus: f64,
    pub c_minus: Option<f64>,
    pub x_plus: Vec<f64>,
    /// `X₊` in the orthonormal frame.
    pub x_frame: Vec<f64>,
    /// Shape operator in the orthonormal frame.
    #[serde(skip)]
    pub a_plus: Mat<f64>,
    /// Tangential part of `P` in the orthonormal frame.
    #[serde(skip)]
    pub p_tan: Mat<f64>,
    pub sigma_norm2: f64,
    pub mean_h: f64,
    /// Ascending.
    pub lambdas: Vec<f64>,
    #[serde(skip)]
    pub principal_dirs: Mat<f64>,
    pub null: Option<NullFrame>,
}

impl ShapeData {
    pub fn is_null(&self) -> bool {
        self.null.is_some()
    }

    pub fn theta(&self) -> Option<f64> {
        self.null.as_ref().map(|n| n.theta)
    }

    /// `Tr(Pᵀ A²)`: trace of `v ↦ (P A² v)ᵀ`.
    pub fn trace_pt_a2(&self) -> f64 {
        let a2 = self.a_plus.matmul(&self.a_plus).expect("3x3");
        self.p_tan.matmul(&a2).expect("3x3").trace()
    }
}

/// `h`-orthonormal basis of the source tangent space by Gram–Schmidt on
/// the coordinate directions; returns `T` with `E = df·T`.
fn orthonormal_coords(h: &Mat<f64>) -> Mat<f64> {
    let n = h.rows();
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for c in &cols {
            let p = h.form(&v, c);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= p * y;
            }
        }
        let len = h.form(&v, &v).sqrt();
        cols.push(v.into_iter().map(|x| x / len).collect());
    }
    Mat::from_cols(&cols)
}

fn det3(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Orthonormal basis of the plane orthogonal to a unit vector of `ℝ³`.
fn complement(w: &[f64]) -> [Vec<f64>; 2] {
    let skip = (0..3)
        .max_by(|&i, &j| w[i].abs().total_cmp(&w[j].abs()))
        .unwrap_or(0);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for k in (0..3).filter(|&k| k != skip) {
        let mut v = vec![0.0; 3];
        v[k] = 1.0;
        for b in std::iter::once(w).chain(out.iter().map(|x| x.as_slice())) {
            let p = dot(&v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= p * y;
            }
        }
        let len = dot(&v, &v).sqrt();
        out.push(v.into_iter().map(|x| x / len).collect());
    }
    [out[0].clone(), out[1].clone()]
}

fn comb(q: &[Vec<f64>; 2], v: &[f64]) -> Vec<f64> {
    (0..3).map(|i| q[0][i] * v[0] + q[1][i] * v[1]).collect()
}

fn null_frame(a: &Mat<f64>, pt: &Mat<f64>, x_frame: &[f64], t: &Mat<f64>) -> Result<NullFrame> {
    let len = dot(x_frame, x_frame).sqrt();
    let e3: Vec<f64> = x_frame.iter().map(|v| v / len).collect();
    let q = complement(&e3);
    let restrict = |m: &Mat<f64>| Mat::from_fn(2, 2, |i, j| m.form(&q[i], &q[j]));
    let ad = restrict(a);
    let ad = Mat::from_fn(2, 2, |i, j| 0.5 * (ad[(i, j)] + ad[(j, i)]));
    let eig = eig_sym(&ad)?;
    let (l2, l1) = (eig.values[0], eig.values[1]);
    let gauge = (l1 - l2).abs() <= EQUAL_CURVATURE_TOL * (1.0 + l1.abs().max(l2.abs()));
    let (mut e1, mut e2, lambda1, lambda2) = if gauge {
        let pd = restrict(pt);
        let pd = Mat::from_fn(2, 2, |i, j| 0.5 * (pd[(i, j)] + pd[(j, i)]));
        let pe = eig_sym(&pd)?;
        let m = 0.5 * (l1 + l2);
        (comb(&q, &pe.vector(1)), comb(&q, &pe.vector(0)), m, m)
    } else {
        (comb(&q, &eig.vector(1)), comb(&q, &eig.vector(0)), l1, l2)
    };
    if det3(&e1, &e2, &e3) < 0.0 {
        e2.iter_mut().for_each(|x| *x = -*x);
    }
    // keep e1 deterministic: largest-magnitude component positive
    let lead = (0..3)
        .max_by(|&i, &j| e1[i].abs().total_cmp(&e1[j].abs()))
        .unwrap_or(0);
    if e1[lead] < 0.0 {
        e1.iter_mut().for_each(|x| *x = -*x);
        e2.iter_mut().for_each(|x| *x = -*x);
    }
    let pe1 = pt.matvec(&e1);
    let theta = dot(&e2, &pe1).atan2(dot(&e1, &pe1)).rem_euclid(TAU);
    let ae3 = a.matvec(&e3);
    let lambda3 = dot(&e3, &ae3);
    let trivial_residual = dot(&ae3, &ae3).sqrt();
    let coords = [t.matvec(&e1), t.matvec(&e2), t.matvec(&e3)];
    Ok(NullFrame {
        e: [e1, e2, e3],
        coords,
        lambda1,
        lambda2,
        lambda3,
        theta,
        gauge,
        trivial_residual,
    })
}

/// Builds the extrinsic package from an assembled point.
pub fn shape_data(local: &Local<f64>, u: &[f64], null_tol: f64) -> Result<ShapeData> {
    let t = orthonormal_coords(&local.h);
    let e_amb = local.df.matmul(&t)?;
    let a_raw = t.transpose().matmul(&local.sigma)?.matmul(&t)?;
    // σ in an orthonormal frame is the shape operator; symmetric by construction
    let a = Mat::from_fn(3, 3, |i, j| 0.5 * (a_raw[(i, j)] + a_raw[(j, i)]));
    let gp = local.g.matmul(&local.p)?;
    let p_tan = e_amb.transpose().matmul(&gp)?.matmul(&e_amb)?;
    let x_frame = t.transpose().matmul(&local.h)?.matvec(&local.x_coord);
    let eig = eig_sym(&a)?;
    let c = local.c_plus;
    let is_null = c.abs() < null_tol;

    let (eps_minus, n_minus, c_minus) = if is_null {
        (0, Some(local.pn.clone()), None)
    } else {
        let s = local.q_minus.abs().sqrt();
        let nm: Vec<f64> = local.n_minus_raw.iter().map(|v| v / s).collect();
        let cm = local.g.form(&nm, &nm);
        (if local.q_minus > 0.0 { 1 } else { -1 }, Some(nm), Some(cm))
    };
    let null = if is_null {
        Some(null_frame(&a, &p_tan, &x_frame, &t)?)
    } else {
        None
    };
    Ok(ShapeData {
        point: u.to_vec(),
        ambient_point: local.f.clone(),
        tangent_basis: (0..3).map(|j| e_amb.col(j)).collect(),
        frame_coords: t,
        n_plus: local.n_plus.clone(),
        n_minus,
        eps_minus,
        c_plus: c,
        c_minus,
        x_plus: local.x_plus.clone(),
        x_frame,
        sigma_norm2: a.matmul(&a)?.trace(),
        mean_h: a.trace() / 3.0,
        lambdas: eig.values.clone(),
        principal_dirs: eig.vectors,
        a_plus: a,
        p_tan,
        null,
    })
}
