//! Coefficient traits shared by every exact computation in the crate.
//!
//! [`Field`] is the minimal interface the linear algebra needs. [`DiffRing`]
//! adds the coordinate partial derivatives `∂_μ`, which are identically zero
//! on the constant fiber `Q`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_q(v: &Q) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_q(&q(v))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a.clone() * b.clone();
        *self = self.clone() - prod;
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a.clone() * b.clone();
        *self = self.clone() + prod;
    }

    fn scale_q(&self, s: &Q) -> Self {
        self.clone() * Self::from_q(s)
    }

    /// Rough size used to prefer cheap pivots during elimination.
    fn weight(&self) -> usize {
        0
    }
}

/// A field with commuting derivations along the coordinates `x⁰..x³`.
pub trait DiffRing: Field {
    fn partial(&self, mu: usize) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self -= a * b;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        *self += a * b;
    }
    fn scale_q(&self, s: &Q) -> Self {
        self * s
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl DiffRing for Q {
    fn partial(&self, _mu: usize) -> Self {
        <Q as Zero>::zero()
    }
}

/// Sign of a nonzero rational, `None` for zero.
pub fn q_sign(v: &Q) -> Option<bool> {
    if Zero::is_zero(v) {
        None
    } else {
        Some(v.is_positive())
    }
}

/// Short exact string: `"3"`, `"-5/7"`.
pub fn q_to_string(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn q_from_str(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        assert_eq!(qf(1, 2) + qf(1, 3), qf(5, 6));
        assert_eq!(q_to_string(&qf(-10, 14)), "-5/7");
        assert_eq!(q_from_str(" -5/7"), Some(qf(-5, 7)));
        assert_eq!(q_from_str("1/0"), None);
        assert!(Field::is_zero(&q(3).partial(2)));
    }
}
