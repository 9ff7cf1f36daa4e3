use crate::error::{Error, Result};

/// A coordinate box `∏ (lo_i, hi_i)` with a label. Infinite bounds are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    label: String,
    bounds: Vec<(f64, f64)>,
}

impl Chart {
    pub fn new(label: impl Into<String>, bounds: Vec<(f64, f64)>) -> Self {
        Chart {
            label: label.into(),
            bounds,
        }
    }

    /// Chart covering all of `ℝⁿ`.
    pub fn euclidean(label: impl Into<String>, dim: usize) -> Self {
        Self::new(label, vec![(f64::NEG_INFINITY, f64::INFINITY); dim])
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Distance from `x` to the nearest face of the box (negative outside).
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.bounds
            .iter()
            .zip(x)
            .map(|(&(lo, hi), &v)| (v - lo).min(hi - v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Fails unless `x` has the right dimension and lies strictly inside
    /// the box with at least `margin` to spare.
    pub fn check(&self, x: &[f64], margin: f64) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "chart '{}' has dimension {}, point has {}",
                self.label,
                self.dim(),
                x.len()
            )));
        }
        let m = self.margin(x);
        if m > margin && x.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                chart: self.label.clone(),
                point: x.to_vec(),
                margin: m,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_and_check() {
        let c = Chart::new("box", vec![(0.0, 1.0), (-1.0, 1.0)]);
        assert!((c.margin(&[0.25, 0.5]) - 0.25).abs() < 1e-15);
        assert!(c.check(&[0.25, 0.5], 0.1).is_ok());
        assert!(matches!(
            c.check(&[0.05, 0.0], 0.1),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(c.check(&[0.5], 0.0).is_err());
    }
}
