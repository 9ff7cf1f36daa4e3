use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Real-like number type that every geometric field can be evaluated in.
///
/// Implemented by `f64`, by [`Jet2`](super::Jet2) (value with exact first and
/// second partials) and by [`Dual<T>`](super::Dual) for any `T: Scalar`, so
/// nesting gives derivatives of arbitrary order where a pipeline needs them.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn cst(v: f64) -> Self;

    /// The plain value, with all infinitesimal parts dropped.
    fn re(&self) -> f64;

    /// Largest absolute component (value and every derivative part).
    fn magnitude(&self) -> f64;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn atan(self) -> Self;
    fn acos(self) -> Self;
    fn acosh(self) -> Self;

    fn zero() -> Self {
        Self::cst(0.0)
    }

    fn one() -> Self {
        Self::cst(1.0)
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn acosh(self) -> Self {
        f64::acosh(self)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn powi(self, n: u32) -> Self {
        f64::powi(self, n as i32)
    }
}

/// Two-argument arctangent built from `atan`, with the branch chosen from
/// the plain values. Result lies in (-pi, pi].
pub fn atan2<S: Scalar>(y: S, x: S) -> S {
    use std::f64::consts::{FRAC_PI_2, PI};
    let (yr, xr) = (y.re(), x.re());
    if xr.abs() >= yr.abs() {
        let base = (y / x).atan();
        if xr > 0.0 {
            base
        } else if yr >= 0.0 {
            base + PI
        } else {
            base - PI
        }
    } else if yr > 0.0 {
        -(x / y).atan() + FRAC_PI_2
    } else {
        -(x / y).atan() - FRAC_PI_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atan2_matches_std_on_all_quadrants() {
        for k in 0..64 {
            let a = -3.1 + 6.2 * k as f64 / 63.0;
            for r in [0.3, 1.0, 7.0] {
                let (y, x) = (r * a.sin(), r * a.cos());
                assert!((atan2(y, x) - y.atan2(x)).abs() < 1e-14, "a={a}");
            }
        }
    }
}
