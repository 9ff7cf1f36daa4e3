use std::f64::consts::PI;

use crate::error::Result;
use crate::manifold::{Chart, MetricField};
use crate::numerics::{Mat, Scalar};

/// A two-dimensional space form in geodesic polar or Cartesian coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// Unit sphere, colatitude and longitude: `dφ² + sin²φ dψ²`.
    Sphere,
    /// Hyperboloid model of curvature −1, polar: `dr² + sinh²r dφ²`.
    Hyperbolic,
    /// Euclidean plane.
    Plane,
}

impl Factor {
    fn bounds(self) -> [(f64, f64); 2] {
        match self {
            Factor::Sphere => [(0.0, PI), (-PI, PI)],
            Factor::Hyperbolic => [(0.0, f64::INFINITY), (-PI, PI)],
            Factor::Plane => [(f64::NEG_INFINITY, f64::INFINITY); 2],
        }
    }

    fn warp<S: Scalar>(self, a: S) -> S {
        match self {
            Factor::Sphere => {
                let s = a.sin();
                s * s
            }
            Factor::Hyperbolic => {
                let s = a.sinh();
                s * s
            }
            Factor::Plane => S::one(),
        }
    }

    /// Gaussian curvature.
    pub fn curvature(self) -> f64 {
        match self {
            Factor::Sphere => 1.0,
            Factor::Hyperbolic => -1.0,
            Factor::Plane => 0.0,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Factor::Sphere => "S2",
            Factor::Hyperbolic => "H2",
            Factor::Plane => "R2",
        }
    }
}

/// Riemannian product of two surfaces, coordinates `(u¹, u², v¹, v²)`.
#[derive(Clone, Debug)]
pub struct ProductMetric {
    first: Factor,
    second: Factor,
    chart: Chart,
}

impl ProductMetric {
    pub fn new(first: Factor, second: Factor) -> Self {
        let [a, b] = first.bounds();
        let [c, d] = second.bounds();
        let label = format!("{}x{}", first.tag(), second.tag());
        ProductMetric {
            first,
            second,
            chart: Chart::new(label, vec![a, b, c, d]),
        }
    }

    pub fn factors(&self) -> (Factor, Factor) {
        (self.first, self.second)
    }
}

impl MetricField for ProductMetric {
    fn chart(&self) -> &Chart {
        &self.chart
    }

    fn metric<S: Scalar>(&self, x: &[S]) -> Result<Mat<S>> {
        Ok(Mat::from_diag(&[
            S::one(),
            self.first.warp(x[0]),
            S::one(),
            self.second.warp(x[2]),
        ]))
    }
}

/// The product structure `P(u, v) = (u, −v)` in product coordinates.
pub fn product_structure_matrix() -> Mat<f64> {
    Mat::from_diag(&[1.0, 1.0, -1.0, -1.0])
}
