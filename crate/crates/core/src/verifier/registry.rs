//! The flat list of named checks, with default tolerances and preconditions.

use serde::{Serialize, Serializer};

/// What a check needs from the ambient space or the family before it applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Needs {
    /// Nothing beyond a valid sample.
    Nothing,
    /// A known Einstein constant `R̄`.
    Einstein,
    /// The family is null.
    Null,
    /// Closed-form principal curvatures exist.
    Prediction,
    /// The family is CMC.
    Cmc,
    /// The family is null and CMC.
    NullCmc,
    /// Null, CMC and not minimal.
    NullCmcNonMinimal,
    /// The family is minimal.
    Minimal,
    /// Null and totally geodesic.
    TotallyGeodesicNull,
    /// The `M_ab` family.
    Mab,
}

impl Needs {
    pub fn describe(self) -> &'static str {
        match self {
            Needs::Nothing => "-",
            Needs::Einstein => "Einstein ambient",
            Needs::Null => "null",
            Needs::Prediction => "closed-form curvatures",
            Needs::Cmc => "CMC",
            Needs::NullCmc => "null, CMC",
            Needs::NullCmcNonMinimal => "null, CMC, non-minimal",
            Needs::Minimal => "minimal",
            Needs::TotallyGeodesicNull => "null, totally geodesic",
            Needs::Mab => "M_ab family",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Einstein,
    Paracomplex,
    Neutral,
    Nullity,
    CRange,
    Eigenvalues,
    Cmc,
    Minimal,
    CmcRelation,
    CmcAngle,
    GradientC,
    XDerivative,
    HessianC,
    LaplacianC,
    Gauss,
    NullScalarFormula,
    NullScalarCorrected,
    TotallyGeodesic,
    NullIdentity,
    PrincipalAngle,
    ConnectionRelations,
    NullNormal,
    TrivialDirection,
    MabCounterexample,
    GaugeInvariance,
    FdOracle,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub id: CheckId,
    pub name: &'static str,
    pub needs: Needs,
    pub default_tolerance: f64,
    pub summary: &'static str,
}

const fn info(
    id: CheckId,
    name: &'static str,
    needs: Needs,
    default_tolerance: f64,
    summary: &'static str,
) -> CheckInfo {
    CheckInfo {
        id,
        name,
        needs,
        default_tolerance,
        summary,
    }
}

/// Every registered check, in report order.
pub const CHECKS: &[CheckInfo] = &[
    info(
        CheckId::Einstein,
        "einstein",
        Needs::Einstein,
        1e-6,
        "ambient Ric = (R/4)g and R = R̄ at each image point",
    ),
    info(
        CheckId::Paracomplex,
        "paracomplex",
        Needs::Nothing,
        1e-6,
        "P² = Id, isometry, ∇̄P = 0, tr P = 0, (2,2) eigenspaces",
    ),
    info(
        CheckId::Neutral,
        "neutral",
        Needs::Nothing,
        1e-6,
        "g₋ scalar- and Weyl-flat, same Christoffels and Ricci as g₊, signature (2,2)",
    ),
    info(
        CheckId::Nullity,
        "nullity",
        Needs::Null,
        1e-8,
        "|C₊| at every sample",
    ),
    info(
        CheckId::CRange,
        "c-range",
        Needs::Nothing,
        1e-9,
        "excess of |C₊| over 1",
    ),
    info(
        CheckId::Eigenvalues,
        "eigenvalues",
        Needs::Prediction,
        1e-6,
        "principal curvatures and H against closed forms, up to one global sign",
    ),
    info(
        CheckId::Cmc,
        "cmc",
        Needs::Cmc,
        1e-7,
        "variation of H across the samples",
    ),
    info(CheckId::Minimal, "minimal", Needs::Minimal, 1e-6, "|H|"),
    info(
        CheckId::CmcRelation,
        "cmc-relation",
        Needs::NullCmcNonMinimal,
        1e-5,
        "−8λ₁λ₂ = R̄ with λ₁, λ₂ constant",
    ),
    info(
        CheckId::CmcAngle,
        "cmc-angle",
        Needs::NullCmc,
        1e-6,
        "(λ₁² − λ₂²)cos θ = 0",
    ),
    info(
        CheckId::GradientC,
        "gradient-c",
        Needs::Nothing,
        1e-5,
        "∇C₊ = −2A₊X₊",
    ),
    info(
        CheckId::XDerivative,
        "x-derivative",
        Needs::Nothing,
        1e-5,
        "∇_ξX₊ = −(PA₊ξ)ᵀ + C₊A₊ξ on a frame",
    ),
    info(
        CheckId::HessianC,
        "hessian-c",
        Needs::Nothing,
        1e-4,
        "Hessian identity for C₊ on frame pairs",
    ),
    info(
        CheckId::LaplacianC,
        "laplacian-c",
        Needs::Nothing,
        1e-4,
        "ΔC₊ = −6X₊(H) − 2C₊|σ|² + 2Tr(PᵀA₊²)",
    ),
    info(
        CheckId::Gauss,
        "gauss",
        Needs::Einstein,
        1e-5,
        "R = ½R̄ + 9H² − |σ|²",
    ),
    info(
        CheckId::NullScalarFormula,
        "null-scalar-formula",
        Needs::Null,
        1e-5,
        "R = 2λ₁λ₂cos2θ − 2(λ₁² + λ₂²)cos²θ",
    ),
    info(
        CheckId::NullScalarCorrected,
        "null-scalar-corrected",
        Needs::Null,
        1e-5,
        "the same with the term 2e₃[(λ₁ − λ₂)cos θ] added",
    ),
    info(
        CheckId::TotallyGeodesic,
        "totally-geodesic",
        Needs::TotallyGeodesicNull,
        1e-9,
        "totally geodesic null ⇒ A₊ = 0, R = 0, R̄ = 0",
    ),
    info(
        CheckId::NullIdentity,
        "null-identity",
        Needs::Null,
        1e-5,
        "½R̄ + (λ₁+λ₂)² + (λ₁−λ₂)²cos2θ = 0",
    ),
    info(
        CheckId::PrincipalAngle,
        "principal-angle",
        Needs::Null,
        1e-7,
        "Pe₁ = cosθe₁ + sinθe₂, Pe₂ = sinθe₁ − cosθe₂",
    ),
    info(
        CheckId::ConnectionRelations,
        "connection-relations",
        Needs::Null,
        1e-4,
        "ω relations of the null frame and k, μ, ν = −½e_i(θ)",
    ),
    info(
        CheckId::NullNormal,
        "null-normal",
        Needs::Nothing,
        1e-7,
        "C₊ = 0 ⇔ N₋ null, and N₋ ∥ PN₊",
    ),
    info(
        CheckId::TrivialDirection,
        "trivial-direction",
        Needs::Null,
        1e-7,
        "|A₊(PN₊)| / (1 + |A₊|)",
    ),
    info(
        CheckId::MabCounterexample,
        "mab-counterexample",
        Needs::Mab,
        1e-6,
        "H = 0 and |−8λ₁λ₂ − R̄| ≥ 1 where ⟨x,a⟩ = 0.3",
    ),
    info(
        CheckId::GaugeInvariance,
        "gauge-invariance",
        Needs::Nothing,
        1e-8,
        "invariants under 100 random orthogonal reparametrizations",
    ),
    info(
        CheckId::FdOracle,
        "fd-oracle",
        Needs::Nothing,
        1e-9,
        "jet and fd residuals agree within the step-doubling estimate",
    ),
];

impl CheckId {
    pub fn info(self) -> &'static CheckInfo {
        CHECKS
            .iter()
            .find(|c| c.id == self)
            .expect("every id is registered")
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn parse(name: &str) -> Option<Self> {
        CHECKS.iter().find(|c| c.name == name).map(|c| c.id)
    }

    /// Checks evaluated sample by sample (everything but the scenario-level ones).
    pub fn is_pointwise(self) -> bool {
        !matches!(
            self,
            CheckId::MabCounterexample | CheckId::GaugeInvariance | CheckId::FdOracle
        )
    }

    /// Checks that compare the ambient model rather than the hypersurface.
    pub fn is_ambient(self) -> bool {
        matches!(
            self,
            CheckId::Einstein | CheckId::Paracomplex | CheckId::Neutral
        )
    }

    pub fn all() -> impl Iterator<Item = CheckId> {
        CHECKS.iter().map(|c| c.id)
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_and_are_unique() {
        let mut names: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
        for c in CHECKS {
            assert_eq!(CheckId::parse(c.name), Some(c.id));
            assert!(c.default_tolerance > 0.0);
        }
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
        assert_eq!(CheckId::parse("no-such-check"), None);
    }
}
