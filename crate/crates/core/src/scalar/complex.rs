//! Gaussian extension `T[i]` of a coefficient field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{DiffRing, Field, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Field> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Complex { re, im }
    }

    pub fn real(re: T) -> Self {
        Complex { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Complex { re: T::zero(), im: T::one() }
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiply by `i`.
    pub fn times_i(&self) -> Self {
        Complex { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Complex { re: self.re.clone() * s.clone(), im: self.im.clone() * s.clone() }
    }
}

impl<T: Field> Add for Complex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Complex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Field> Sub for Complex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Complex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Field> Mul for Complex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Complex::real(self.re * rhs.re);
        }
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Complex { re, im }
    }
}

impl<T: Field> Div for Complex<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.re.clone() * rhs.re.clone() + rhs.im.clone() * rhs.im.clone();
        let inv = T::one() / n;
        (self * rhs.conj()).scale(&inv)
    }
}

impl<T: Field> Neg for Complex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex { re: -self.re, im: -self.im }
    }
}

impl<T: Field> Field for Complex<T> {
    fn zero() -> Self {
        Complex::real(T::zero())
    }
    fn one() -> Self {
        Complex::real(T::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_q(v: &Q) -> Self {
        Complex::real(T::from_q(v))
    }
    fn scale_q(&self, s: &Q) -> Self {
        Complex { re: self.re.scale_q(s), im: self.im.scale_q(s) }
    }
    fn weight(&self) -> usize {
        self.re.weight() + self.im.weight()
    }
}

impl<T: DiffRing> DiffRing for Complex<T> {
    fn partial(&self, mu: usize) -> Self {
        Complex { re: self.re.partial(mu), im: self.im.partial(mu) }
    }
}

impl<T: Field + fmt::Debug> fmt::Debug for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{:?}", self.re)
        } else {
            write!(f, "({:?} + i*({:?}))", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn gaussian_rationals() {
        let a = Complex::new(q(1), q(2));
        let b = Complex::new(q(3), q(-1));
        let p = a.clone() * b.clone();
        assert_eq!(p, Complex::new(q(5), q(5)));
        assert_eq!(p / b, a);
        assert_eq!(Complex::<Q>::i() * Complex::i(), -Complex::<Q>::one());
    }
}
