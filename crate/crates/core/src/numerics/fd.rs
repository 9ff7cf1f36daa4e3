//! Central finite differences with one Richardson step, used as an
//! independent oracle for the jet pipeline.

use crate::error::Result;
use crate::manifold::chart::Chart;

/// Default step for first derivatives.
pub const H1: f64 = 1e-3;
/// Default step for second derivatives.
pub const H2: f64 = 2e-3;

/// An extrapolated derivative together with a (conservative) error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct FdEstimate<T> {
    pub value: T,
    pub error: f64,
}

/// Result of [`fd_derivative`] for a scalar field.
#[derive(Clone, Debug, PartialEq)]
pub enum FdDerivative {
    Gradient(FdEstimate<Vec<f64>>),
    Hessian(FdEstimate<Vec<Vec<f64>>>),
}

fn check_stencil(chart: Option<&Chart>, x: &[f64], h: f64) -> Result<()> {
    match chart {
        Some(c) => c.check(x, h),
        None => Ok(()),
    }
}

fn shifted(x: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

fn roundoff(scale: f64, h: f64, order: i32) -> f64 {
    4.0 * f64::EPSILON * scale.max(1.0) / h.powi(order)
}

/// Combines estimates at `h` and `h/2`: Richardson value and error bound.
fn richardson(coarse: f64, fine: f64) -> (f64, f64) {
    let r = (4.0 * fine - coarse) / 3.0;
    (r, (r - fine).abs())
}

/// Jacobian `∂f_c/∂x_i` of a vector-valued map, indexed `[c][i]`.
pub fn fd_jacobian<F>(
    f: F,
    x: &[f64],
    h: f64,
    chart: Option<&Chart>,
) -> Result<FdEstimate<Vec<Vec<f64>>>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    check_stencil(chart, x, h)?;
    let n = x.len();
    let f0 = f(x)?;
    let scale = f0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out = vec![vec![0.0; n]; f0.len()];
    let mut err: f64 = 0.0;
    for i in 0..n {
        let mut d = [vec![], vec![]];
        for (k, step) in [h, 0.5 * h].into_iter().enumerate() {
            let fp = f(&shifted(x, &[(i, step)]))?;
            let fm = f(&shifted(x, &[(i, -step)]))?;
            d[k] = fp
                .iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * step))
                .collect();
        }
        for c in 0..f0.len() {
            let (r, e) = richardson(d[0][c], d[1][c]);
            out[c][i] = r;
            err = err.max(e + roundoff(scale, 0.5 * h, 1));
        }
    }
    Ok(FdEstimate {
        value: out,
        error: err,
    })
}

/// Hessians of every component of a vector-valued map, indexed `[c][i][j]`.
pub fn fd_hessian_vec<F>(
    f: F,
    x: &[f64],
    h: f64,
    chart: Option<&Chart>,
) -> Result<FdEstimate<Vec<Vec<Vec<f64>>>>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    check_stencil(chart, x, h)?;
    let n = x.len();
    let f0 = f(x)?;
    let m = f0.len();
    let scale = f0.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut out = vec![vec![vec![0.0; n]; n]; m];
    let mut err: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let mut d = [vec![0.0; m], vec![0.0; m]];
            for (k, s) in [h, 0.5 * h].into_iter().enumerate() {
                if i == j {
                    let fp = f(&shifted(x, &[(i, s)]))?;
                    let fm = f(&shifted(x, &[(i, -s)]))?;
                    for c in 0..m {
                        d[k][c] = (fp[c] - 2.0 * f0[c] + fm[c]) / (s * s);
                    }
                } else {
                    let fpp = f(&shifted(x, &[(i, s), (j, s)]))?;
                    let fpm = f(&shifted(x, &[(i, s), (j, -s)]))?;
                    let fmp = f(&shifted(x, &[(i, -s), (j, s)]))?;
                    let fmm = f(&shifted(x, &[(i, -s), (j, -s)]))?;
                    for c in 0..m {
                        d[k][c] = (fpp[c] - fpm[c] - fmp[c] + fmm[c]) / (4.0 * s * s);
                    }
                }
            }
            for c in 0..m {
                let (r, e) = richardson(d[0][c], d[1][c]);
                out[c][i][j] = r;
                out[c][j][i] = r;
                err = err.max(e + roundoff(scale, 0.5 * h, 2));
            }
        }
    }
    Ok(FdEstimate {
        value: out,
        error: err,
    })
}

/// Gradient (`order = 1`) or Hessian (`order = 2`) of a scalar field.
pub fn fd_derivative<F>(f: F, x: &[f64], order: u8, chart: Option<&Chart>) -> Result<FdDerivative>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let g = |y: &[f64]| f(y).map(|v| vec![v]);
    match order {
        1 => {
            let e = fd_jacobian(g, x, H1, chart)?;
            Ok(FdDerivative::Gradient(FdEstimate {
                value: e.value.into_iter().next().unwrap_or_default(),
                error: e.error,
            }))
        }
        2 => {
            let e = fd_hessian_vec(g, x, H2, chart)?;
            Ok(FdDerivative::Hessian(FdEstimate {
                value: e.value.into_iter().next().unwrap_or_default(),
                error: e.error,
            }))
        }
        o => Err(crate::error::Error::InvalidParameter(format!(
            "finite-difference order must be 1 or 2, got {o}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn square_first_derivative() {
        let FdDerivative::Gradient(g) =
            fd_derivative(|x| Ok(x[0] * x[0]), &[3.0], 1, None).unwrap()
        else {
            panic!("expected gradient")
        };
        assert!((g.value[0] - 6.0).abs() < 1e-9);
        assert!(g.error < 1e-9);
    }

    #[test]
    fn bilinear_hessian() {
        let FdDerivative::Hessian(h) =
            fd_derivative(|x| Ok(x[0] * x[1]), &[0.4, -1.3], 2, None).unwrap()
        else {
            panic!("expected hessian")
        };
        for (i, row) in h.value.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 0.0 } else { 1.0 };
                assert!((v - want).abs() < 1e-9, "{i}{j}: {v}");
            }
        }
    }

    #[test]
    fn stencil_must_stay_inside_chart() {
        let c = Chart::new("half-line", vec![(0.0, f64::INFINITY)]);
        let r = fd_derivative(|x| Ok(x[0].ln()), &[5e-4], 1, Some(&c));
        assert!(matches!(r, Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn error_estimate_covers_truth() {
        let x = [0.7, 0.2];
        let f = |y: &[f64]| Ok(vec![(y[0] * 3.0).sin() * y[1].exp()]);
        let j = fd_jacobian(f, &x, H1, None).unwrap();
        let exact = [
            3.0 * 2.1f64.cos() * 0.2f64.exp(),
            2.1f64.sin() * 0.2f64.exp(),
        ];
        for i in 0..2 {
            assert!((j.value[0][i] - exact[i]).abs() <= j.error.max(1e-12));
        }
    }
}
