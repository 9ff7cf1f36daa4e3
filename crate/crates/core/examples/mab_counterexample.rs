//! The minimal null hypersurfaces {⟨x,a⟩ + ⟨y,b⟩ = 0} of S²×S², where −8λ₁λ₂
//! tracks ⟨x,a⟩ instead of staying at R̄ = 4.

use paranull::hypersurface::{Evaluator, NULL_TOL};
use paranull::models::{Family, FamilySpec};
use paranull::verifier::Sample;

fn main() -> paranull::Result<()> {
    let family = Family::new(FamilySpec::Mab {
        a: [0.0, 0.0, 1.0],
        b: [0.0, 0.0, 1.0],
    })?;
    println!("{}", family.label());
    println!("  ⟨x,a⟩      H          λ₁         λ₂        −8λ₁λ₂    R̄");
    for xa in [-0.6, -0.3, 0.0, 0.3, 0.6] {
        let u = family.point_with_xa(xa).expect("M_ab family");
        let s = Sample::evaluate(&family, &u, Evaluator::jet(), NULL_TOL)?;
        let nf = s.null()?;
        println!(
            "  {xa:+.2}   {:+.1e}   {:+.6}  {:+.6}  {:+.6}  {}",
            s.sd.mean_h,
            nf.lambda1,
            nf.lambda2,
            -8.0 * nf.lambda1 * nf.lambda2,
            s.model.rbar.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
