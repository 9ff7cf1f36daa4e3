//! Scalar curvature, Einstein test and Christoffel symbols of the model spaces.

use paranull::manifold::{christoffel, curvature, is_einstein, DerivativeMode};
use paranull::models::{build_model, ModelKind};

fn main() -> paranull::Result<()> {
    for kind in [
        ModelKind::S2xs2,
        ModelKind::H2xh2,
        ModelKind::Flat,
        ModelKind::S2xr2,
        ModelKind::GeodesicSpace,
    ] {
        let m = build_model(kind)?;
        let samples = m.sample_grid(3);
        let rep = is_einstein(&m.metric, &samples, 1e-8, DerivativeMode::Jet)?;
        let at = curvature(&m.metric, &samples[samples.len() / 2], DerivativeMode::Jet)?;
        println!(
            "{:<15} R = {:>8.5}  einstein = {:<5}  |Ric - R/4 g| = {:.1e}  signature = {:?}",
            kind.as_str(),
            at.scalar,
            rep.einstein,
            rep.max_residual,
            at.signature
        );
    }

    // on the first sphere factor, Γ^φ_ψψ = -sin φ cos φ
    let s2 = build_model(ModelKind::S2xs2)?;
    let x = [1.1, 0.4, 0.9, -0.3];
    let gamma = christoffel(&s2.metric, &x, DerivativeMode::Jet)?;
    println!(
        "\nΓ^φ_ψψ = {:.12}, -sin φ cos φ = {:.12}",
        gamma[0][1][1],
        -x[0].sin() * x[0].cos()
    );
    Ok(())
}
