//! Hypersurface families with their closed-form predictions.
//!
//! Each family knows how to produce, for a source point `u`, an ambient
//! model plus an immersion that is valid around `u`. Product models use one
//! global chart; tangential congruences recentre a Plücker chart at every
//! sample so that the image always sits at the chart origin.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::surfaces::SurfaceInSpaceForm;
use super::{
    build_flat_product, build_h2xh2, build_s2xs2, geodesic_space_at, wedge, ModelKind, ModelSpace,
};
use super::{PlueckerChart, PLUECKER_RADIUS};
use crate::error::{Error, Result};
use crate::hypersurface::Immersion;
use crate::manifold::Chart;
use crate::numerics::{atan2, dot, Scalar};

/// Which hypersurface and with what parameters.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// `{⟨x,y⟩ = t}` in `S²×S²`; in `H²×H²` the level `⟨x,y⟩ = −1/|t|` of the
    /// Lorentzian product, with the horospherical limit at `t = 0`.
    SigmaT { space: ModelKind, t: f64 },
    /// `{⟨x,a⟩ + ⟨y,b⟩ = 0}` in `S²×S²`.
    Mab { a: [f64; 3], b: [f64; 3] },
    /// Oriented geodesics tangent to a surface in `S³`.
    Tangential { surface: SurfaceInSpaceForm },
    /// Linear hyperplane `n^⊥` in flat `ℝ²×ℝ²`.
    NullPlane { normal: [f64; 4] },
    /// Graph `x⁴ = c (x¹)²` in flat `ℝ²×ℝ²` (the plane `x⁴ = 0` for `c = 0`).
    Graph { c: f64 },
}

/// What the closed forms say at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    /// Principal curvatures, ascending.
    pub lambdas: [f64; 3],
    pub mean: f64,
}

/// Structural facts about a family, used to decide which checks apply.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyTraits {
    pub null: bool,
    pub cmc: bool,
    pub minimal: bool,
    pub totally_geodesic: bool,
}

#[derive(Clone, Debug)]
pub struct Family {
    spec: FamilySpec,
    source: Chart,
    center: Vec<f64>,
    half_widths: Vec<f64>,
}

/// A family member localized around a sample point.
#[derive(Clone, Debug)]
pub enum FamilyMap {
    SigmaS2 { t: f64, source: Chart },
    SigmaH2 { c: f64, source: Chart },
    Horospherical { source: Chart },
    Mab(MabMap),
    Tangential(TangentialMap),
    Linear { basis: [[f64; 4]; 3], source: Chart },
    Graph { c: f64, source: Chart },
}

#[derive(Clone, Debug)]
pub struct MabMap {
    a: [f64; 3],
    b: [f64; 3],
    b1: [f64; 3],
    b2: [f64; 3],
    source: Chart,
}

#[derive(Clone, Debug)]
pub struct TangentialMap {
    surface: SurfaceInSpaceForm,
    chart: PlueckerChart,
    source: Chart,
}

fn check_unit(v: &[f64], what: &str) -> Result<()> {
    let n = dot(v, v).sqrt();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "{what} must be a unit vector, has norm {n}"
        )));
    }
    Ok(())
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orthonormal `(b₁, b₂)` completing a unit vector `b` to a right-handed frame.
fn complete(b: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let k = (0..3)
        .min_by(|&i, &j| b[i].abs().total_cmp(&b[j].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let p = dot(&e, b);
    let mut b1 = [e[0] - p * b[0], e[1] - p * b[1], e[2] - p * b[2]];
    let n = dot(&b1, &b1).sqrt();
    b1.iter_mut().for_each(|x| *x /= n);
    let b2 = cross(b, &b1);
    (b1, b2)
}

/// Unit vector of `ℝ³` to spherical coordinates `(colatitude, longitude)`.
fn sphere_coords<S: Scalar>(v: &[S]) -> [S; 2] {
    [v[2].acos(), atan2(v[1], v[0])]
}

fn sphere_point<S: Scalar>(phi: S, psi: S) -> [S; 3] {
    [phi.sin() * psi.cos(), phi.sin() * psi.sin(), phi.cos()]
}

/// Hyperboloid point `(sinh r cos φ, sinh r sin φ, cosh r)`.
fn hyperboloid_point<S: Scalar>(r: S, phi: S) -> [S; 3] {
    [r.sinh() * phi.cos(), r.sinh() * phi.sin(), r.cosh()]
}

fn hyperboloid_coords<S: Scalar>(y: &[S]) -> [S; 2] {
    [y[2].acosh(), atan2(y[1], y[0])]
}

impl FamilySpec {
    fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::SigmaT { space, t } => {
                if !matches!(space, ModelKind::S2xs2 | ModelKind::H2xh2) {
                    return Err(Error::InvalidParameter(format!(
                        "sigma-t lives in s2xs2 or h2xh2, not {}",
                        space.as_str()
                    )));
                }
                if t.is_nan() || t.abs() >= 1.0 {
                    return Err(Error::InvalidParameter(format!(
                        "sigma-t needs |t| < 1, got {t}"
                    )));
                }
            }
            FamilySpec::Mab { a, b } => {
                check_unit(a, "a")?;
                check_unit(b, "b")?;
            }
            FamilySpec::Tangential { .. } => {}
            FamilySpec::NullPlane { normal } => {
                check_unit(normal, "normal")?;
                let c = normal[0] * normal[0] + normal[1] * normal[1]
                    - normal[2] * normal[2]
                    - normal[3] * normal[3];
                if c.abs() > 1e-12 {
                    return Err(Error::NonNullPoint { c_plus: c });
                }
            }
            FamilySpec::Graph { c } => {
                if !c.is_finite() {
                    return Err(Error::InvalidParameter(
                        "graph coefficient must be finite".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

impl Family {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        spec.validate()?;
        let (source, center, half_widths) = match &spec {
            FamilySpec::SigmaT {
                space: ModelKind::S2xs2,
                t,
            } => (
                Chart::new(
                    "(φ,ψ,s)",
                    vec![(0.0, PI), (-PI, PI), (f64::NEG_INFINITY, f64::INFINITY)],
                ),
                // x and y sit on the equator, symmetric about longitude 0
                vec![FRAC_PI_2, -0.5 * t.acos(), FRAC_PI_2],
                vec![0.35; 3],
            ),
            FamilySpec::SigmaT { t, .. } if *t == 0.0 => (
                Chart::new(
                    "(r,φ,s)",
                    vec![
                        (0.0, f64::INFINITY),
                        (-PI, PI),
                        (f64::NEG_INFINITY, f64::INFINITY),
                    ],
                ),
                vec![0.8, -FRAC_PI_2, 1.0],
                vec![0.3; 3],
            ),
            FamilySpec::SigmaT { .. } => (
                Chart::new(
                    "(r,φ,s)",
                    vec![
                        (0.0, f64::INFINITY),
                        (-PI, PI),
                        (f64::NEG_INFINITY, f64::INFINITY),
                    ],
                ),
                vec![0.8, -0.6, FRAC_PI_2],
                vec![0.3; 3],
            ),
            FamilySpec::Mab { a, b } => {
                let source = Chart::new(
                    "(φ,ψ,s)",
                    vec![(0.0, PI), (-PI, PI), (f64::NEG_INFINITY, f64::INFINITY)],
                );
                let center = mab_center(a, b, 0.3);
                (source, center, vec![0.45, 0.45, 0.45])
            }
            FamilySpec::Tangential { surface } => {
                let source = Chart::new("(α,β,θ)", {
                    let mut b = surface.chart().bounds().to_vec();
                    b.push((f64::NEG_INFINITY, f64::INFINITY));
                    b
                });
                match surface.kind() {
                    super::surfaces::SurfaceKind::GeodesicSphere { .. } => (
                        source,
                        vec![FRAC_PI_2, 0.0, PI],
                        vec![0.8, 2.0, PI * 7.0 / 8.0],
                    ),
                    // Φ degenerates where cos 2θ = 0 (the torus is ruled by great circles)
                    super::surfaces::SurfaceKind::CliffordTorus => {
                        (source, vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 0.6])
                    }
                }
            }
            FamilySpec::NullPlane { .. } | FamilySpec::Graph { .. } => {
                (Chart::euclidean("u", 3), vec![0.0; 3], vec![0.8; 3])
            }
        };
        Ok(Family {
            spec,
            source,
            center,
            half_widths,
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn label(&self) -> String {
        match &self.spec {
            FamilySpec::SigmaT { space, t } => format!("sigma-t(t={t}) in {}", space.as_str()),
            FamilySpec::Mab { a, b } => format!("M_ab(a={a:?}, b={b:?})"),
            FamilySpec::Tangential { surface } => {
                format!("tangential congruence of {}", surface.label())
            }
            FamilySpec::NullPlane { normal } => format!("hyperplane normal {normal:?}"),
            FamilySpec::Graph { c } => format!("graph x4 = {c} (x1)^2"),
        }
    }

    /// Whether [`localize`](Self::localize) builds a fresh ambient chart per point,
    /// so that orientations at different samples are not comparable.
    pub fn recentres(&self) -> bool {
        matches!(self.spec, FamilySpec::Tangential { .. })
    }

    pub fn model_kind(&self) -> ModelKind {
        match &self.spec {
            FamilySpec::SigmaT { space, .. } => *space,
            FamilySpec::Mab { .. } => ModelKind::S2xs2,
            FamilySpec::Tangential { .. } => ModelKind::GeodesicSpace,
            FamilySpec::NullPlane { .. } | FamilySpec::Graph { .. } => ModelKind::Flat,
        }
    }

    pub fn traits(&self) -> FamilyTraits {
        match &self.spec {
            FamilySpec::SigmaT { space, t } => FamilyTraits {
                null: true,
                cmc: true,
                minimal: *space == ModelKind::S2xs2 && *t == 0.0,
                totally_geodesic: false,
            },
            FamilySpec::Mab { .. } => FamilyTraits {
                null: true,
                cmc: true,
                minimal: true,
                totally_geodesic: false,
            },
            FamilySpec::Tangential { surface } => {
                let (k1, k2) = surface.principal_curvatures();
                FamilyTraits {
                    null: true,
                    cmc: k1 == k2,
                    minimal: k1 == k2,
                    totally_geodesic: false,
                }
            }
            FamilySpec::NullPlane { .. } => FamilyTraits {
                null: true,
                cmc: true,
                minimal: true,
                totally_geodesic: true,
            },
            FamilySpec::Graph { c } => FamilyTraits {
                null: false,
                cmc: *c == 0.0,
                minimal: *c == 0.0,
                totally_geodesic: *c == 0.0,
            },
        }
    }

    /// Per-axis sampling interval.
    pub fn sample_box(&self) -> Vec<(f64, f64)> {
        self.center
            .iter()
            .zip(&self.half_widths)
            .map(|(&c, &w)| (c - w, c + w))
            .collect()
    }

    /// Closed-form principal curvatures and mean curvature at `u`, where they are known.
    pub fn prediction(&self, u: &[f64]) -> Option<Prediction> {
        let sorted = |mut l: [f64; 3]| {
            l.sort_by(f64::total_cmp);
            l
        };
        let p = match &self.spec {
            FamilySpec::SigmaT { space, t } => {
                let l1 = ((1.0 + t) / (2.0 * (1.0 - t))).sqrt();
                let l2 = ((1.0 - t) / (2.0 * (1.0 + t))).sqrt();
                let l2 = if *space == ModelKind::S2xs2 { -l2 } else { l2 };
                [l1, l2, 0.0]
            }
            FamilySpec::Mab { a, .. } => {
                let xa = dot(&sphere_point(u[0], u[1]), a);
                let l = xa / (2.0 * (1.0 - xa * xa)).sqrt();
                [l, -l, 0.0]
            }
            FamilySpec::Tangential { surface } => {
                let (k1, k2) = surface.principal_curvatures();
                let (c, s) = (u[2].cos(), u[2].sin());
                [k1 * c * c + k2 * s * s, -k1 * s * s - k2 * c * c, 0.0]
            }
            FamilySpec::NullPlane { .. } => [0.0; 3],
            FamilySpec::Graph { .. } => return None,
        };
        Some(Prediction {
            mean: (p[0] + p[1] + p[2]) / 3.0,
            lambdas: sorted(p),
        })
    }

    /// A source point with `⟨x,a⟩ = xa` (M_ab only).
    pub fn point_with_xa(&self, xa: f64) -> Option<Vec<f64>> {
        match &self.spec {
            FamilySpec::Mab { a, b } => Some(mab_center(a, b, xa)),
            _ => None,
        }
    }

    /// The ambient model and an immersion valid around `u`.
    pub fn localize(&self, u: &[f64]) -> Result<(ModelSpace, FamilyMap)> {
        let source = self.source.clone();
        Ok(match &self.spec {
            FamilySpec::SigmaT {
                space: ModelKind::S2xs2,
                t,
            } => (build_s2xs2(), FamilyMap::SigmaS2 { t: *t, source }),
            FamilySpec::SigmaT { t, .. } if *t == 0.0 => {
                (build_h2xh2(), FamilyMap::Horospherical { source })
            }
            FamilySpec::SigmaT { t, .. } => (
                build_h2xh2(),
                FamilyMap::SigmaH2 {
                    c: 1.0 / t.abs(),
                    source,
                },
            ),
            FamilySpec::Mab { a, b } => {
                let (b1, b2) = complete(b);
                (
                    build_s2xs2(),
                    FamilyMap::Mab(MabMap {
                        a: *a,
                        b: *b,
                        b1,
                        b2,
                        source,
                    }),
                )
            }
            FamilySpec::Tangential { surface } => {
                let base = tangential_bivector(surface, u);
                let model = geodesic_space_at(&base)?;
                let chart = PlueckerChart::new(&base, 0, PLUECKER_RADIUS)?;
                (
                    model,
                    FamilyMap::Tangential(TangentialMap {
                        surface: surface.clone(),
                        chart,
                        source,
                    }),
                )
            }
            FamilySpec::NullPlane { normal } => {
                let basis = complement4(normal);
                (build_flat_product(), FamilyMap::Linear { basis, source })
            }
            FamilySpec::Graph { c } => (build_flat_product(), FamilyMap::Graph { c: *c, source }),
        })
    }
}

/// `φ(x) ∧ (cos θ e₁ + sin θ e₂)`.
fn tangential_bivector<S: Scalar>(surface: &SurfaceInSpaceForm, u: &[S]) -> Vec<S> {
    let p = surface.map(&u[..2]);
    let (e1, e2) = surface.principal_frame(&u[..2]);
    let (c, s) = (u[2].cos(), u[2].sin());
    let dir: Vec<S> = e1.iter().zip(&e2).map(|(&a, &b)| a * c + b * s).collect();
    wedge(&p, &dir)
}

/// Orthonormal basis of `n^⊥ ⊂ ℝ⁴`.
fn complement4(n: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    let mut all = vec![*n];
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        for b in &all {
            let p = dot(&e, b);
            e.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
        let len = dot(&e, &e).sqrt();
        if len > 1e-6 && basis.len() < 3 {
            e.iter_mut().for_each(|x| *x /= len);
            basis.push(e);
            all.push(e);
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// Source point with `⟨x,a⟩ = xa`, choosing the remaining freedom to keep
/// both factors well inside the spherical charts.
fn mab_center(a: &[f64; 3], b: &[f64; 3], xa: f64) -> Vec<f64> {
    let (a1, a2) = complete(a);
    let (b1, b2) = complete(b);
    let margin = |v: &[f64]| {
        let [phi, psi] = sphere_coords(v);
        phi.min(PI - phi).min(PI - psi.abs())
    };
    let r = (1.0 - xa * xa).sqrt();
    let mut best = (f64::NEG_INFINITY, vec![0.0; 3]);
    for i in 0..48 {
        let ang = TAU * i as f64 / 48.0;
        let x: Vec<f64> = (0..3)
            .map(|k| xa * a[k] + r * (ang.cos() * a1[k] + ang.sin() * a2[k]))
            .collect();
        let [phi, psi] = sphere_coords(&x);
        for j in 0..48 {
            let s = TAU * j as f64 / 48.0 - PI;
            let y: Vec<f64> = (0..3)
                .map(|k| -xa * b[k] + r * (s.cos() * b1[k] + s.sin() * b2[k]))
                .collect();
            let m = margin(&x).min(margin(&y));
            if m > best.0 {
                best = (m, vec![phi, psi, s]);
            }
        }
    }
    best.1
}

impl FamilyMap {
    fn source_chart(&self) -> &Chart {
        match self {
            FamilyMap::SigmaS2 { source, .. }
            | FamilyMap::SigmaH2 { source, .. }
            | FamilyMap::Horospherical { source }
            | FamilyMap::Linear { source, .. }
            | FamilyMap::Graph { source, .. } => source,
            FamilyMap::Mab(m) => &m.source,
            FamilyMap::Tangential(m) => &m.source,
        }
    }
}

impl Immersion for FamilyMap {
    fn source(&self) -> &Chart {
        self.source_chart()
    }

    fn map<S: Scalar>(&self, u: &[S]) -> Result<Vec<S>> {
        Ok(match self {
            FamilyMap::SigmaS2 { t, .. } => {
                let (phi, psi, s) = (u[0], u[1], u[2]);
                let x = sphere_point(phi, psi);
                let e_phi = [phi.cos() * psi.cos(), phi.cos() * psi.sin(), -phi.sin()];
                let e_psi = [-psi.sin(), psi.cos(), S::zero()];
                let w = (1.0 - t * t).sqrt();
                let y: Vec<S> = (0..3)
                    .map(|k| x[k] * *t + (e_phi[k] * s.cos() + e_psi[k] * s.sin()) * w)
                    .collect();
                let [p2, q2] = sphere_coords(&y);
                vec![phi, psi, p2, q2]
            }
            FamilyMap::SigmaH2 { c, .. } => {
                let (r, phi, s) = (u[0], u[1], u[2]);
                let x = hyperboloid_point(r, phi);
                let e_r = [r.cosh() * phi.cos(), r.cosh() * phi.sin(), r.sinh()];
                let e_phi = [-phi.sin(), phi.cos(), S::zero()];
                let w = (c * c - 1.0).sqrt();
                let y: Vec<S> = (0..3)
                    .map(|k| x[k] * *c + (e_r[k] * s.cos() + e_phi[k] * s.sin()) * w)
                    .collect();
                let [r2, p2] = hyperboloid_coords(&y);
                vec![r, phi, r2, p2]
            }
            FamilyMap::Horospherical { .. } => {
                // Busemann level set b(x) + b(y) = 0 for b(z) = ln(z₃ − z₁)
                let (r, phi, s) = (u[0], u[1], u[2]);
                let x = hyperboloid_point(r, phi);
                let k = (x[2] - x[0]).recip();
                let sum = (s * s + 1.0) / k;
                let y = [(sum - k) * 0.5, s, (sum + k) * 0.5];
                let [r2, p2] = hyperboloid_coords(&y);
                vec![r, phi, r2, p2]
            }
            FamilyMap::Mab(m) => {
                let (phi, psi, s) = (u[0], u[1], u[2]);
                let x = sphere_point(phi, psi);
                let xa = x[0] * m.a[0] + x[1] * m.a[1] + x[2] * m.a[2];
                let w = (-(xa * xa) + 1.0).sqrt();
                let y: Vec<S> = (0..3)
                    .map(|k| -xa * m.b[k] + (s.cos() * m.b1[k] + s.sin() * m.b2[k]) * w)
                    .collect();
                let [p2, q2] = sphere_coords(&y);
                vec![phi, psi, p2, q2]
            }
            FamilyMap::Tangential(m) => m.chart.from_bivector(&tangential_bivector(&m.surface, u)),
            FamilyMap::Linear { basis, .. } => (0..4)
                .map(|i| u[0] * basis[0][i] + u[1] * basis[1][i] + u[2] * basis[2][i])
                .collect(),
            FamilyMap::Graph { c, .. } => vec![u[0], u[1], u[2], u[0] * u[0] * *c],
        })
    }

    fn label(&self) -> String {
        match self {
            FamilyMap::SigmaS2 { t, .. } => format!("sigma-t(S2xS2, t={t})"),
            FamilyMap::SigmaH2 { c, .. } => format!("sigma-t(H2xH2, <x,y>=-{c})"),
            FamilyMap::Horospherical { .. } => "horospherical(H2xH2)".into(),
            FamilyMap::Mab(m) => format!("M_ab(a={:?}, b={:?})", m.a, m.b),
            FamilyMap::Tangential(m) => format!("tangential({})", m.surface.label()),
            FamilyMap::Linear { .. } => "hyperplane".into(),
            FamilyMap::Graph { c, .. } => format!("graph(c={c})"),
        }
    }
}
