//! Scenario files.
//!
//! ```toml
//! model = "s2xs2"
//! checks = ["nullity", "eigenvalues", "cmc-relation"]
//! grid = [6, 6, 6]
//! derivative_mode = "jet"
//! seed = 7
//!
//! [hypersurface]
//! kind = "sigma-t"
//! t = 0.5
//!
//! [tolerances]
//! eigenvalues = 1e-7
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::registry::CheckId;
use super::VerifyError;
use crate::error::Result;
use crate::manifold::DerivativeMode;
use crate::models::{Family, FamilySpec, ModelKind, SurfaceInSpaceForm};

/// Surfaces of `S³` whose tangential congruences can be requested.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceName {
    GeodesicSphere,
    CliffordTorus,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HypersurfaceConfig {
    SigmaT {
        t: f64,
    },
    Mab {
        a: [f64; 3],
        b: [f64; 3],
    },
    Tangential {
        surface: SurfaceName,
        radius: Option<f64>,
    },
    NullPlane {
        normal: [f64; 4],
    },
    Graph {
        c: f64,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: ModelKind,
    hypersurface: HypersurfaceConfig,
    checks: Vec<String>,
    grid: Vec<usize>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    derivative_mode: DerivativeMode,
    #[serde(default)]
    seed: u64,
    null_tol: Option<f64>,
}

/// A validated scenario: names resolved, tolerances positive, grid usable.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub hypersurface: HypersurfaceConfig,
    pub checks: Vec<CheckId>,
    pub grid: Vec<usize>,
    pub tolerances: BTreeMap<CheckId, f64>,
    pub derivative_mode: DerivativeMode,
    pub seed: u64,
    pub null_tol: Option<f64>,
}

fn config_err(msg: impl Into<String>) -> VerifyError {
    VerifyError::Config(msg.into())
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> std::result::Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> std::result::Result<Self, VerifyError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        let resolve = |name: &str| {
            CheckId::parse(name).ok_or_else(|| config_err(format!("unknown check '{name}'")))
        };
        let mut checks = Vec::new();
        for name in &raw.checks {
            let id = resolve(name)?;
            if !checks.contains(&id) {
                checks.push(id);
            }
        }
        if checks.is_empty() {
            return Err(config_err("no checks selected"));
        }
        let mut tolerances = BTreeMap::new();
        for (name, &tol) in &raw.tolerances {
            let id = resolve(name)?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(config_err(format!(
                    "tolerance for '{name}' must be positive, got {tol}"
                )));
            }
            tolerances.insert(id, tol);
        }
        if raw.grid.len() != 3 {
            return Err(config_err(format!(
                "grid needs 3 axis counts, got {}",
                raw.grid.len()
            )));
        }
        if let Some(&n) = raw.grid.iter().find(|&&n| n < 2) {
            return Err(config_err(format!(
                "grid counts must be at least 2, got {n}"
            )));
        }
        if let Some(t) = raw.null_tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(config_err(format!("null_tol must be positive, got {t}")));
            }
        }
        if raw.model == ModelKind::S2xr2 {
            return Err(config_err(
                "model must be one of s2xs2, h2xh2, flat, geodesic-space",
            ));
        }
        let expected = match &raw.hypersurface {
            HypersurfaceConfig::SigmaT { .. } => None,
            HypersurfaceConfig::Mab { .. } => Some(ModelKind::S2xs2),
            HypersurfaceConfig::Tangential { .. } => Some(ModelKind::GeodesicSpace),
            HypersurfaceConfig::NullPlane { .. } | HypersurfaceConfig::Graph { .. } => {
                Some(ModelKind::Flat)
            }
        };
        match expected {
            Some(m) if m != raw.model => {
                return Err(config_err(format!(
                    "this hypersurface lives in {}, not {}",
                    m.as_str(),
                    raw.model.as_str()
                )))
            }
            None if !matches!(raw.model, ModelKind::S2xs2 | ModelKind::H2xh2) => {
                return Err(config_err("sigma-t needs model s2xs2 or h2xh2"))
            }
            _ => {}
        }
        if let HypersurfaceConfig::Tangential { surface, radius } = &raw.hypersurface {
            match (surface, radius) {
                (SurfaceName::GeodesicSphere, None) => {
                    return Err(config_err("geodesic-sphere needs a radius"))
                }
                (SurfaceName::CliffordTorus, Some(_)) => {
                    return Err(config_err("clifford-torus takes no radius"))
                }
                _ => {}
            }
        }
        Ok(ScenarioConfig {
            model: raw.model,
            hypersurface: raw.hypersurface,
            checks,
            grid: raw.grid,
            tolerances,
            derivative_mode: raw.derivative_mode,
            seed: raw.seed,
            null_tol: raw.null_tol,
        })
    }

    /// The family this scenario samples; parameter errors surface here.
    pub fn family(&self) -> Result<Family> {
        let spec = match &self.hypersurface {
            HypersurfaceConfig::SigmaT { t } => FamilySpec::SigmaT {
                space: self.model,
                t: *t,
            },
            HypersurfaceConfig::Mab { a, b } => FamilySpec::Mab { a: *a, b: *b },
            HypersurfaceConfig::Tangential { surface, radius } => FamilySpec::Tangential {
                surface: match surface {
                    SurfaceName::GeodesicSphere => {
                        SurfaceInSpaceForm::geodesic_sphere(radius.unwrap_or(f64::NAN))?
                    }
                    SurfaceName::CliffordTorus => SurfaceInSpaceForm::clifford_torus(),
                },
            },
            HypersurfaceConfig::NullPlane { normal } => FamilySpec::NullPlane { normal: *normal },
            HypersurfaceConfig::Graph { c } => FamilySpec::Graph { c: *c },
        };
        Family::new(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
model = "s2xs2"
checks = ["nullity", "eigenvalues"]
grid = [3, 3, 3]
[hypersurface]
kind = "sigma-t"
t = 0.5
"#;

    #[test]
    fn parses_minimal_file() {
        let c = ScenarioConfig::parse(BASE).unwrap();
        assert_eq!(c.checks, vec![CheckId::Nullity, CheckId::Eigenvalues]);
        assert_eq!(c.derivative_mode, DerivativeMode::Jet);
        assert_eq!(c.hypersurface, HypersurfaceConfig::SigmaT { t: 0.5 });
        assert!(c.family().is_ok());
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad = [
            BASE.replace("\"nullity\"", "\"nulity\""),
            BASE.replace("[3, 3, 3]", "[3, 1, 3]"),
            BASE.replace("[3, 3, 3]", "[3, 3]"),
            format!("{BASE}[tolerances]\nnullity = -1.0\n"),
            format!("{BASE}[tolerances]\nbogus = 1.0\n"),
            BASE.replace("\"s2xs2\"", "\"flat\""),
            BASE.replace("t = 0.5", "t = 0.5\nradius = 1.0"),
        ];
        for text in bad {
            assert!(
                matches!(ScenarioConfig::parse(&text), Err(VerifyError::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn out_of_range_parameter_is_a_construction_error() {
        let c = ScenarioConfig::parse(&BASE.replace("t = 0.5", "t = 1.5")).unwrap();
        assert!(c.family().is_err());
    }
}
