//! Surfaces in the round 3-sphere `S³ ⊂ ℝ⁴`, with closed-form principal data.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::manifold::Chart;
use crate::numerics::{eig_sym, Jet2, Mat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SurfaceKind {
    /// Geodesic sphere of the given radius about `(1, 0, 0, 0)`; umbilic with `κ = cot r`.
    GeodesicSphere { radius: f64 },
    /// `(cos α, sin α, cos β, sin β)/√2`, with `κ₁ = 1`, `κ₂ = −1`.
    CliffordTorus,
}

/// An immersed surface `φ: U ⊂ ℝ² → S³` with a principal frame.
///
/// Shape-operator convention: `A = −dν` for the unit normal `ν` returned by
/// [`normal`](Self::normal), so `⟨∂_i∂_j φ, ν⟩ = ⟨A ∂_i φ, ∂_j φ⟩`.
#[derive(Clone, Debug)]
pub struct SurfaceInSpaceForm {
    kind: SurfaceKind,
    chart: Chart,
}

impl SurfaceInSpaceForm {
    pub fn new(kind: SurfaceKind) -> Result<Self> {
        let chart = match kind {
            SurfaceKind::GeodesicSphere { radius } => {
                if !(radius > 0.0 && radius < PI) {
                    return Err(Error::InvalidParameter(format!(
                        "geodesic sphere radius must lie in (0, π), got {radius}"
                    )));
                }
                if (radius - PI / 2.0).abs() < 1e-9 {
                    // the equatorial sphere is totally geodesic and its congruence does not immerse
                    return Err(Error::InvalidParameter(
                        "radius π/2 gives a totally geodesic sphere".into(),
                    ));
                }
                Chart::new("sphere(α,β)", vec![(0.0, PI), (-PI, PI)])
            }
            SurfaceKind::CliffordTorus => Chart::euclidean("torus(α,β)", 2),
        };
        Ok(SurfaceInSpaceForm { kind, chart })
    }

    pub fn geodesic_sphere(radius: f64) -> Result<Self> {
        Self::new(SurfaceKind::GeodesicSphere { radius })
    }

    pub fn clifford_torus() -> Self {
        Self::new(SurfaceKind::CliffordTorus).expect("fixed parameters")
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn label(&self) -> String {
        match self.kind {
            SurfaceKind::GeodesicSphere { radius } => format!("geodesic sphere r={radius}"),
            SurfaceKind::CliffordTorus => "Clifford torus".into(),
        }
    }

    pub fn map<S: Scalar>(&self, u: &[S]) -> Vec<S> {
        let (a, b) = (u[0], u[1]);
        match self.kind {
            SurfaceKind::GeodesicSphere { radius } => {
                let (c, s) = (radius.cos(), radius.sin());
                vec![
                    S::cst(c),
                    a.sin() * b.cos() * s,
                    a.sin() * b.sin() * s,
                    a.cos() * s,
                ]
            }
            SurfaceKind::CliffordTorus => {
                let k = FRAC_1_SQRT_2;
                vec![a.cos() * k, a.sin() * k, b.cos() * k, b.sin() * k]
            }
        }
    }

    /// Unit normal in `T S³`.
    pub fn normal<S: Scalar>(&self, u: &[S]) -> Vec<S> {
        let (a, b) = (u[0], u[1]);
        match self.kind {
            SurfaceKind::GeodesicSphere { radius } => {
                let (c, s) = (radius.cos(), radius.sin());
                vec![
                    S::cst(s),
                    a.sin() * b.cos() * (-c),
                    a.sin() * b.sin() * (-c),
                    a.cos() * (-c),
                ]
            }
            SurfaceKind::CliffordTorus => {
                let k = FRAC_1_SQRT_2;
                vec![a.cos() * (-k), a.sin() * (-k), b.cos() * k, b.sin() * k]
            }
        }
    }

    /// Unit principal directions `(e₁, e₂)` in `ℝ⁴`; for the umbilic sphere the coordinate frame.
    pub fn principal_frame<S: Scalar>(&self, u: &[S]) -> (Vec<S>, Vec<S>) {
        let (a, b) = (u[0], u[1]);
        let z = S::zero();
        match self.kind {
            SurfaceKind::GeodesicSphere { .. } => (
                vec![z, a.cos() * b.cos(), a.cos() * b.sin(), -a.sin()],
                vec![z, -b.sin(), b.cos(), z],
            ),
            SurfaceKind::CliffordTorus => {
                (vec![-a.sin(), a.cos(), z, z], vec![z, z, -b.sin(), b.cos()])
            }
        }
    }

    /// `(κ₁, κ₂)` along `(e₁, e₂)`.
    pub fn principal_curvatures(&self) -> (f64, f64) {
        match self.kind {
            SurfaceKind::GeodesicSphere { radius } => {
                let k = 1.0 / radius.tan();
                (k, k)
            }
            SurfaceKind::CliffordTorus => (1.0, -1.0),
        }
    }

    /// Principal curvatures computed from the second fundamental form of the
    /// map itself (ascending), independent of the closed forms.
    pub fn measured_curvatures(&self, u: &[f64]) -> Result<[f64; 2]> {
        let phi = self.map(&Jet2::variables(u));
        let nu = self.normal(u);
        let first = Mat::from_fn(2, 2, |i, j| {
            (0..4).map(|k| phi[k].d(i) * phi[k].d(j)).sum::<f64>()
        });
        let second = Mat::from_fn(2, 2, |i, j| {
            (0..4).map(|k| phi[k].dd(i, j) * nu[k]).sum::<f64>()
        });
        // eigenvalues of I⁻¹II, computed symmetrically as those of I^{-1/2} II I^{-1/2}
        let e = eig_sym(&first)?;
        let root_inv = Mat::from_fn(2, 2, |i, j| {
            (0..2)
                .map(|k| e.vectors[(i, k)] * e.vectors[(j, k)] / e.values[k].sqrt())
                .sum()
        });
        let sym = root_inv.matmul(&second)?.matmul(&root_inv)?;
        let sym = Mat::from_fn(2, 2, |i, j| 0.5 * (sym[(i, j)] + sym[(j, i)]));
        let vals = eig_sym(&sym)?.values;
        Ok([vals[0], vals[1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dot;

    #[test]
    fn unit_sphere_constraint_and_normal() {
        for s in [
            SurfaceInSpaceForm::geodesic_sphere(0.5).unwrap(),
            SurfaceInSpaceForm::clifford_torus(),
        ] {
            let u = [1.1, 0.4];
            let p = s.map(&u);
            let n = s.normal(&u);
            let (e1, e2) = s.principal_frame(&u);
            assert!((dot(&p, &p) - 1.0).abs() < 1e-12);
            assert!((dot(&n, &n) - 1.0).abs() < 1e-12);
            assert!(dot(&n, &p).abs() < 1e-12);
            assert!(dot(&e1, &e2).abs() < 1e-12 && dot(&e1, &n).abs() < 1e-12);
        }
    }

    #[test]
    fn curvatures_match_closed_forms() {
        let s = SurfaceInSpaceForm::geodesic_sphere(0.7).unwrap();
        let k = 1.0 / 0.7f64.tan();
        let m = s.measured_curvatures(&[1.2, -0.3]).unwrap();
        assert!((m[0] - k).abs() < 1e-10 && (m[1] - k).abs() < 1e-10);
        let m = SurfaceInSpaceForm::clifford_torus()
            .measured_curvatures(&[0.3, 2.0])
            .unwrap();
        assert!((m[0] + 1.0).abs() < 1e-10 && (m[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn equatorial_sphere_rejected() {
        assert!(SurfaceInSpaceForm::geodesic_sphere(PI / 2.0).is_err());
    }
}
