//! Second-order jets: a value carried together with its exact gradient and
//! Hessian with respect to up to [`MAX_ARITY`] chart coordinates.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 6;
const TRI: usize = MAX_ARITY * (MAX_ARITY + 1) / 2;

#[inline]
const fn tri(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    a * MAX_ARITY - a * (a + 1) / 2 + b
}

/// Scalar with exact first and second partial derivatives.
///
/// The Hessian is stored as a packed upper triangle, so it is symmetric by
/// construction. A jet of arity 0 is a constant and combines with jets of
/// any arity; combining two non-constant jets of different arity panics.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet2 {
    n: u8,
    v: f64,
    g: [f64; MAX_ARITY],
    h: [f64; TRI],
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet2")
            .field("value", &self.v)
            .field("grad", &self.grad())
            .field("hess", &self.hess())
            .finish()
    }
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Jet2 {
            n: 0,
            v,
            g: [0.0; MAX_ARITY],
            h: [0.0; TRI],
        }
    }

    /// Builds a jet from explicit parts. `hess` is symmetrized.
    pub fn from_parts(value: f64, grad: &[f64], hess: &[Vec<f64>]) -> Result<Self> {
        let n = grad.len();
        if n > MAX_ARITY {
            return Err(Error::ArityMismatch {
                expected: MAX_ARITY,
                got: n,
            });
        }
        if hess.len() != n || hess.iter().any(|r| r.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                got: hess.len(),
            });
        }
        let mut j = Jet2::constant(value);
        j.n = n as u8;
        j.g[..n].copy_from_slice(grad);
        for a in 0..n {
            for b in a..n {
                j.h[tri(a, b)] = 0.5 * (hess[a][b] + hess[b][a]);
            }
        }
        Ok(j)
    }

    pub fn arity(&self) -> usize {
        self.n as usize
    }

    pub fn value(&self) -> f64 {
        self.v
    }

    pub fn grad(&self) -> Vec<f64> {
        self.g[..self.arity()].to_vec()
    }

    pub fn d(&self, i: usize) -> f64 {
        self.g[i]
    }

    pub fn dd(&self, i: usize, j: usize) -> f64 {
        self.h[tri(i, j)]
    }

    pub fn hess(&self) -> Vec<Vec<f64>> {
        let n = self.arity();
        (0..n)
            .map(|i| (0..n).map(|j| self.h[tri(i, j)]).collect())
            .collect()
    }

    /// Coordinate jets for every component of `x`.
    pub fn variables(x: &[f64]) -> Vec<Jet2> {
        assert!(
            x.len() <= MAX_ARITY,
            "jet arity {} exceeds {MAX_ARITY}",
            x.len()
        );
        (0..x.len())
            .map(|i| jet_lift(x, i).expect("index in range"))
            .collect()
    }

    #[inline]
    fn join(a: u8, b: u8) -> u8 {
        if a == b || b == 0 {
            a
        } else if a == 0 {
            b
        } else {
            panic!("jet arity mismatch: {a} vs {b}")
        }
    }

    /// Applies a univariate function given its value and first two derivatives at `self.v`.
    #[inline]
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let n = self.arity();
        let mut out = Jet2 {
            n: self.n,
            v: f0,
            g: [0.0; MAX_ARITY],
            h: [0.0; TRI],
        };
        for i in 0..n {
            out.g[i] = f1 * self.g[i];
        }
        for i in 0..n {
            for j in i..n {
                let k = tri(i, j);
                out.h[k] = f1 * self.h[k] + f2 * self.g[i] * self.g[j];
            }
        }
        out
    }
}

/// The coordinate function `x^active` as a jet over all of `x`.
pub fn jet_lift(x: &[f64], active: usize) -> Result<Jet2> {
    if x.len() > MAX_ARITY {
        return Err(Error::ArityMismatch {
            expected: MAX_ARITY,
            got: x.len(),
        });
    }
    if active >= x.len() {
        return Err(Error::IndexOutOfRange {
            index: active,
            arity: x.len(),
        });
    }
    let mut j = Jet2::constant(x[active]);
    j.n = x.len() as u8;
    j.g[active] = 1.0;
    Ok(j)
}

impl Add for Jet2 {
    type Output = Jet2;
    #[inline]
    fn add(mut self, rhs: Jet2) -> Jet2 {
        self.n = Jet2::join(self.n, rhs.n);
        let n = self.arity();
        self.v += rhs.v;
        for i in 0..n {
            self.g[i] += rhs.g[i];
        }
        for k in 0..TRI {
            self.h[k] += rhs.h[k];
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    #[inline]
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    #[inline]
    fn neg(mut self) -> Jet2 {
        self.v = -self.v;
        for x in self.g.iter_mut() {
            *x = -*x;
        }
        for x in self.h.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    #[inline]
    fn mul(self, rhs: Jet2) -> Jet2 {
        let nn = Jet2::join(self.n, rhs.n);
        let n = nn as usize;
        let mut out = Jet2 {
            n: nn,
            v: self.v * rhs.v,
            g: [0.0; MAX_ARITY],
            h: [0.0; TRI],
        };
        for i in 0..n {
            out.g[i] = self.v * rhs.g[i] + rhs.v * self.g[i];
        }
        for i in 0..n {
            for j in i..n {
                let k = tri(i, j);
                out.h[k] = self.v * rhs.h[k]
                    + rhs.v * self.h[k]
                    + self.g[i] * rhs.g[j]
                    + self.g[j] * rhs.g[i];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: f64) -> Jet2 {
        self.v += rhs;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: f64) -> Jet2 {
        self.v -= rhs;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(mut self, rhs: f64) -> Jet2 {
        self.v *= rhs;
        for x in self.g.iter_mut() {
            *x *= rhs;
        }
        for x in self.h.iter_mut() {
            *x *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: f64) -> Jet2 {
        self * (1.0 / rhs)
    }
}

impl AddAssign for Jet2 {
    fn add_assign(&mut self, rhs: Jet2) {
        *self = *self + rhs;
    }
}

impl SubAssign for Jet2 {
    fn sub_assign(&mut self, rhs: Jet2) {
        *self = *self - rhs;
    }
}

impl MulAssign for Jet2 {
    fn mul_assign(&mut self, rhs: Jet2) {
        *self = *self * rhs;
    }
}

impl Scalar for Jet2 {
    fn cst(v: f64) -> Self {
        Jet2::constant(v)
    }
    fn re(&self) -> f64 {
        self.v
    }
    fn magnitude(&self) -> f64 {
        let n = self.arity();
        let mut m = self.v.abs();
        for i in 0..n {
            m = m.max(self.g[i].abs());
            for j in i..n {
                m = m.max(self.h[tri(i, j)].abs());
            }
        }
        m
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let x = self.v;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }
    fn sinh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(s, c, s)
    }
    fn cosh(self) -> Self {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.chain(c, s, c)
    }
    fn atan(self) -> Self {
        let x = self.v;
        let q = 1.0 / (1.0 + x * x);
        self.chain(x.atan(), q, -2.0 * x * q * q)
    }
    fn acos(self) -> Self {
        let x = self.v;
        let w = 1.0 - x * x;
        let r = w.sqrt();
        self.chain(x.acos(), -1.0 / r, -x / (w * r))
    }
    fn acosh(self) -> Self {
        let x = self.v;
        let w = x * x - 1.0;
        let r = w.sqrt();
        self.chain(x.acosh(), 1.0 / r, -x / (w * r))
    }
    fn recip(self) -> Self {
        let x = self.v;
        self.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_is_coordinate_function() {
        let j = jet_lift(&[0.3, 0.7], 1).unwrap();
        assert_eq!(j.value(), 0.7);
        assert_eq!(j.grad(), vec![0.0, 1.0]);
        assert_eq!(j.hess(), vec![vec![0.0; 2]; 2]);
    }

    #[test]
    fn lift_rejects_bad_index() {
        assert!(matches!(
            jet_lift(&[1.0, 2.0], 2),
            Err(Error::IndexOutOfRange { index: 2, arity: 2 })
        ));
        assert!(jet_lift(&[0.0; 7], 0).is_err());
    }

    #[test]
    fn sin_at_zero() {
        let x = jet_lift(&[0.0], 0).unwrap();
        let s = x.sin();
        assert_eq!(s.value(), 0.0);
        assert_eq!(s.d(0), 1.0);
        assert_eq!(s.dd(0, 0), 0.0);
    }

    #[test]
    fn sqrt_at_four() {
        let x = jet_lift(&[4.0], 0).unwrap();
        let r = x.sqrt();
        assert!((r.value() - 2.0).abs() < 1e-15);
        assert!((r.d(0) - 0.25).abs() < 1e-15);
        assert!((r.dd(0, 0) + 1.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn product_rule_mixed_partial() {
        let v = Jet2::variables(&[2.0, 3.0]);
        let p = v[0] * v[1];
        assert_eq!(p.value(), 6.0);
        assert_eq!(p.grad(), vec![3.0, 2.0]);
        assert_eq!(p.hess(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn mixed_arity_panics() {
        let a = jet_lift(&[1.0, 2.0], 0).unwrap();
        let b = jet_lift(&[1.0, 2.0, 3.0], 0).unwrap();
        let _ = a + b;
    }

    #[test]
    fn constants_broadcast() {
        let a = jet_lift(&[1.0, 2.0], 0).unwrap();
        let c = a * Jet2::constant(3.0) + Jet2::constant(1.0);
        assert_eq!(c.arity(), 2);
        assert_eq!(c.value(), 4.0);
        assert_eq!(c.grad(), vec![3.0, 0.0]);
    }
}
