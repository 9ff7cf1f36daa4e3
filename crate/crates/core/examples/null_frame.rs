//! The null principal frame on Σ_t: principal angle, connection forms and the
//! corrected scalar-curvature identity at one sample.

use paranull::hypersurface::checks::{
    null_identity_expression, null_scalar_corrected, null_scalar_formula,
};
use paranull::hypersurface::{Evaluator, NULL_TOL};
use paranull::models::{Family, FamilySpec, ModelKind};
use paranull::verifier::Sample;

fn main() -> paranull::Result<()> {
    let family = Family::new(FamilySpec::SigmaT {
        space: ModelKind::S2xs2,
        t: 0.5,
    })?;
    let u: Vec<f64> = family
        .sample_box()
        .iter()
        .map(|(a, b)| 0.6 * a + 0.4 * b)
        .collect();
    let s = Sample::evaluate(&family, &u, Evaluator::jet(), NULL_TOL)?;
    let nf = s.null()?;
    let fd = s.frame()?;
    println!("{} at {u:.3?}", family.label());
    println!(
        "C₊ = {:.2e}, λ₁ = {:.6}, λ₂ = {:.6}, θ = {:.6}",
        s.sd.c_plus, nf.lambda1, nf.lambda2, nf.theta
    );
    println!(
        "k = {:.6}, μ = {:.6}, ν = {:.6}, e_i(θ) = {:.6?}",
        fd.k_coef, fd.mu_coef, fd.nu_coef, fd.dtheta
    );
    println!(
        "metric compatibility defect of ω = {:.1e}",
        fd.compatibility_defect()
    );

    let r = s.scalar()?;
    println!("induced R              = {r:.9}");
    println!("closed null formula    = {:.9}", null_scalar_formula(nf));
    println!(
        "with e₃ term           = {:.9}",
        null_scalar_corrected(&s.pd, nf)
    );
    println!(
        "null identity residual = {:.2e}",
        null_identity_expression(nf, s.model.rbar.unwrap_or(f64::NAN))
    );
    Ok(())
}
