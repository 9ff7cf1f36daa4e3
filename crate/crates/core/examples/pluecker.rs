//! Plücker charts on the quadric of oriented geodesics: Newton retraction and
//! the Hodge star that serves as the paracomplex structure.

use paranull::models::{hodge_star_matrix, wedge, PlueckerChart};

fn main() -> paranull::Result<()> {
    let base = wedge(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]);
    let chart = PlueckerChart::new(&base, 0, 0.6)?;
    let x = [0.2, -0.1, 0.25, 0.05];
    let v = chart.frame().matvec(&x);
    let (xi, history) = chart.retract_with_history(&v)?;
    println!(
        "retraction residuals: {}",
        history
            .iter()
            .map(|r| format!("{r:.1e}"))
            .collect::<Vec<_>>()
            .join(" -> ")
    );
    let [q, pf] = chart.constraints(&xi);
    println!("constraints at the result: <<ξ,ξ>> - 1 = {q:.1e}, Pf ξ = {pf:.1e}");
    println!("chart round trip error: {:.1e}", {
        let back = chart.from_bivector(&xi);
        back.iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });

    let star = hodge_star_matrix(0);
    let sq = star.matmul(&star)?;
    println!(
        "⋆² = Id: {}",
        sq.max_abs_diff(&paranull::numerics::Mat::identity(6)) < 1e-15
    );
    println!("tr ⋆ = {}", star.trace());
    Ok(())
}
