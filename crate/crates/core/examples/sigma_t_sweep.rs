//! Measured and closed-form invariants of the tubes Σ_t in both product spaces.

use paranull::hypersurface::Evaluator;
use paranull::models::ModelKind;
use paranull::verifier::sweep_sigma_t;

fn main() {
    let ts = [-0.9, -0.5, 0.0, 0.3, 0.5, 0.9];
    for space in [ModelKind::S2xs2, ModelKind::H2xh2] {
        match sweep_sigma_t(space, &ts, Evaluator::jet()) {
            Ok(table) => println!("{}", table.to_markdown()),
            Err(e) => eprintln!("sweep failed: {e}"),
        }
    }
}
