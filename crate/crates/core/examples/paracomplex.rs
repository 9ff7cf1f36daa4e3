//! Paracomplex axioms and the neutral metric g₋ = g(P·,·) on every model.

use paranull::manifold::DerivativeMode;
use paranull::models::{build_model, ModelKind};
use paranull::parastructure::{neutral_metric, verify_neutral_properties, verify_paracomplex};

fn main() -> paranull::Result<()> {
    println!("model            P²=Id     isometry  ∇P        trace     eigen     | R(g₋)     Weyl(g₋)  ΔΓ        ΔRic");
    for kind in [
        ModelKind::S2xs2,
        ModelKind::H2xh2,
        ModelKind::Flat,
        ModelKind::GeodesicSpace,
    ] {
        let m = build_model(kind)?;
        let samples = m.sample_grid(3);
        let p = verify_paracomplex(&m.pstruct, &m.metric, &samples, DerivativeMode::Jet)?;
        let nm = neutral_metric(&m.metric, &m.pstruct, &samples, 1e-6, DerivativeMode::Jet)?;
        let n = verify_neutral_properties(&nm, &samples, DerivativeMode::Jet)?;
        println!(
            "{:<16} {:.1e}   {:.1e}   {:.1e}   {:.1e}   {:.1e}   | {:.1e}   {:.1e}   {:.1e}   {:.1e}",
            kind.as_str(),
            p.involution,
            p.isometry,
            p.parallel,
            p.trace,
            p.eigenvalues,
            n.scalar,
            n.weyl,
            n.christoffel,
            n.ricci
        );
    }
    Ok(())
}
