//! Congruences of geodesics tangent to surfaces of S³, as hypersurfaces of L⁺(S³).
//!
//! Prints the measured principal data next to the closed forms
//! `λ₊ = κ₁cos²θ + κ₂sin²θ`, `λ₋ = -(κ₁sin²θ + κ₂cos²θ)`.

use std::f64::consts::FRAC_PI_4;

use paranull::hypersurface::{Evaluator, NULL_TOL};
use paranull::models::{Family, FamilySpec, SurfaceInSpaceForm};
use paranull::verifier::Sample;

fn main() -> paranull::Result<()> {
    let surfaces = [
        SurfaceInSpaceForm::geodesic_sphere(FRAC_PI_4)?,
        SurfaceInSpaceForm::geodesic_sphere(0.5)?,
        SurfaceInSpaceForm::clifford_torus(),
    ];
    for surface in surfaces {
        let family = Family::new(FamilySpec::Tangential { surface })?;
        println!("{}", family.label());
        let bx = family.sample_box();
        let x = [0.5 * (bx[0].0 + bx[0].1), 0.5 * (bx[1].0 + bx[1].1)];
        for k in 0..4 {
            let theta = bx[2].0 + (bx[2].1 - bx[2].0) * k as f64 / 3.0;
            let u = [x[0], x[1], theta];
            let s = Sample::evaluate(&family, &u, Evaluator::jet(), NULL_TOL)?;
            let pred = family
                .prediction(&u)
                .expect("tangential families have closed forms");
            println!(
                "  θ = {theta:+.3}  C₊ = {:+.1e}  H = {:+.6}  λ = {:+.6?}  predicted {:+.6?}",
                s.sd.c_plus, s.sd.mean_h, s.sd.lambdas, pred.lambdas
            );
        }
    }
    Ok(())
}
