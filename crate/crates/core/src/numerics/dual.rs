use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::scalar::Scalar;

/// First-order dual number over any scalar type: `re + eps·ε` with `ε² = 0`.
///
/// `Dual<Jet2>` carries one directional derivative on top of a full 2-jet,
/// which is how third derivatives of the metric (and so `∂Γ`) are reached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    /// A variable with unit tangent.
    pub fn var(re: T) -> Self {
        Dual { re, eps: T::one() }
    }

    #[inline]
    fn chain(self, f0: T, f1: T) -> Self {
        Dual {
            re: f0,
            eps: f1 * self.eps,
        }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Dual::new(self.re + r.re, self.eps + r.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Dual::new(self.re - r.re, self.eps - r.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        Dual::new(self.re * r.re, self.re * r.eps + self.eps * r.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, r: Self) -> Self {
        let inv = r.re.recip();
        let q = self.re * inv;
        Dual::new(q, (self.eps - q * r.eps) * inv)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Scalar> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, r: f64) -> Self {
        Dual::new(self.re + r, self.eps)
    }
}

impl<T: Scalar> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, r: f64) -> Self {
        Dual::new(self.re - r, self.eps)
    }
}

impl<T: Scalar> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, r: f64) -> Self {
        Dual::new(self.re * r, self.eps * r)
    }
}

impl<T: Scalar> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, r: f64) -> Self {
        Dual::new(self.re / r, self.eps / r)
    }
}

impl<T: Scalar> AddAssign for Dual<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Scalar> SubAssign for Dual<T> {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl<T: Scalar> MulAssign for Dual<T> {
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn cst(v: f64) -> Self {
        Dual::new(T::cst(v), T::zero())
    }
    fn re(&self) -> f64 {
        self.re.re()
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude().max(self.eps.magnitude())
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        self.chain(r, (r * 2.0).recip())
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.re.ln(), self.re.recip())
    }
    fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh())
    }
    fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh())
    }
    fn atan(self) -> Self {
        let d = (self.re * self.re + 1.0).recip();
        self.chain(self.re.atan(), d)
    }
    fn acos(self) -> Self {
        let d = -(-(self.re * self.re) + 1.0).sqrt().recip();
        self.chain(self.re.acos(), d)
    }
    fn acosh(self) -> Self {
        let d = (self.re * self.re - 1.0).sqrt().recip();
        self.chain(self.re.acosh(), d)
    }
    fn recip(self) -> Self {
        let inv = self.re.recip();
        self.chain(inv, -(inv * inv))
    }
}
