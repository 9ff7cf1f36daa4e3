//! Connection coefficients of the principal null frame, by differencing the
//! frame along the hypersurface.

use std::cell::Cell;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::immersion::Immersion;
use super::local::{local_at, Evaluator, PointData};
use super::shape::{shape_data, ShapeData};
use crate::error::{Error, Result};
use crate::manifold::{EndomorphismField, MetricField};
use crate::numerics::fd::fd_jacobian;

/// Step used to difference the principal frame.
pub const H_FRAME: f64 = 1e-3;

/// `ω_ij^k = g(∇_{e_i} e_j, e_k)` for the null principal frame, with the
/// derived coefficients `k = ω₁₁²`, `μ = ω₂₁²`, `ν = ω₃₁²`.
#[derive(Clone, Debug, Serialize)]
pub struct NullFrameData {
    /// Frame vectors in source coordinates.
    pub e: [Vec<f64>; 3],
    pub omega: [[[f64; 3]; 3]; 3],
    pub k_coef: f64,
    pub mu_coef: f64,
    pub nu_coef: f64,
    pub theta: f64,
    /// `e_i(θ)`.
    pub dtheta: [f64; 3],
    pub lambda1: f64,
    pub lambda2: f64,
    pub fd_error: f64,
}

impl NullFrameData {
    /// `max |ω_ij^k + ω_ik^j|`.
    pub fn compatibility_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    m = m.max((self.omega[i][j][k] + self.omega[i][k][j]).abs());
                }
            }
        }
        m
    }
}

fn wrap(d: f64) -> f64 {
    let r = (d + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

pub fn null_frame_data<I, M, P>(
    imm: &I,
    gf: &M,
    pf: &P,
    pd: &PointData,
    sd: &ShapeData,
    ev: &Evaluator,
    null_tol: f64,
) -> Result<NullFrameData>
where
    I: Immersion,
    M: MetricField,
    P: EndomorphismField,
{
    let base = sd
        .null
        .as_ref()
        .ok_or(Error::NonNullPoint { c_plus: sd.c_plus })?;
    let h = &pd.local.h;
    let gauge_changed = Cell::new(false);
    let frame_at = |v: &[f64]| -> Result<Vec<f64>> {
        let local = local_at(imm, gf, pf, v, ev)?;
        let s = shape_data(&local, v, null_tol)?;
        let nf = s.null.ok_or(Error::NonNullPoint { c_plus: s.c_plus })?;
        if nf.gauge != base.gauge {
            gauge_changed.set(true);
        }
        let [mut e1, mut e2, e3] = nf.coords;
        if h.form(&e1, &base.coords[0]) < 0.0 {
            e1.iter_mut().for_each(|x| *x = -*x);
            e2.iter_mut().for_each(|x| *x = -*x);
        }
        let mut out = Vec::with_capacity(10);
        out.extend(e1);
        out.extend(e2);
        out.extend(e3);
        out.push(base.theta + wrap(nf.theta - base.theta));
        Ok(out)
    };
    let d = fd_jacobian(frame_at, &pd.u, H_FRAME * ev.fd_scale, Some(imm.source()))?;
    if gauge_changed.get() {
        // an isolated umbilic point: the principal frame is not differentiable there
        return Err(Error::FrameSingular {
            point: pd.u.clone(),
        });
    }
    let gamma = pd.jets.induced_christoffel()?;
    let e = &base.coords;

    let mut nabla = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for c in 0..3 {
                let mut v = 0.0;
                for b in 0..3 {
                    v += e[i][b] * d.value[3 * j + c][b];
                    for a in 0..3 {
                        v += gamma[c][(a, b)] * e[i][a] * e[j][b];
                    }
                }
                nabla[i][j][c] = v;
            }
        }
    }
    let mut omega = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                omega[i][j][k] = h.form(&nabla[i][j], &e[k]);
            }
        }
    }
    let dtheta = [0, 1, 2].map(|i| (0..3).map(|b| e[i][b] * d.value[9][b]).sum());
    Ok(NullFrameData {
        e: e.clone(),
        k_coef: omega[0][0][1],
        mu_coef: omega[1][0][1],
        nu_coef: omega[2][0][1],
        omega,
        theta: base.theta,
        dtheta,
        lambda1: base.lambda1,
        lambda2: base.lambda2,
        fd_error: d.error.max(pd.fd_error),
    })
}
