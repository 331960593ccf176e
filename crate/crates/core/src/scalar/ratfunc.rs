//! Rational functions `num/den` in `x⁰..x³`, kept fully reduced with a monic
//! denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{q, DiffRing, Field, Q};

use super::poly::{Poly, NVARS};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Build and reduce `num/den`. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar { num, den: Poly::one() };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return Scalar { num: num.scale(&inv), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().map(|(_, c)| c.recip()).expect("nonzero");
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn constant(c: Q) -> Self {
        Scalar::poly(Poly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        Scalar::poly(Poly::var(i))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, point: &[Q; NVARS]) -> Option<Q> {
        let d = self.den.eval(point);
        if num_traits::Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn eval_f64(&self, point: &[f64; NVARS]) -> f64 {
        let ev = |p: &Poly| {
            p.terms()
                .map(|(m, c)| {
                    let mut t = crate::field::q_to_f64(c);
                    for i in 0..NVARS {
                        t *= point[i].powi(m[i] as i32);
                    }
                    t
                })
                .sum::<f64>()
        };
        ev(&self.num) / ev(&self.den)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        if self.den == rhs.den {
            if self.den.is_constant() {
                return Scalar { num: &self.num + &rhs.num, den: self.den };
            }
            return Scalar::new(&self.num + &rhs.num, self.den);
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_constant() {
            return Scalar::reduced(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        let g2 = Poly::gcd(&t, &g);
        Scalar::reduced(t.div_exact(&g2).expect("gcd divides"), &b1 * &rhs.den.div_exact(&g2).expect("gcd divides"))
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        if self.den.is_constant() && rhs.den.is_constant() {
            return Scalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        if let Some(c) = self.as_constant() {
            return Scalar { num: rhs.num.scale(&c), den: rhs.den }.renorm_zero();
        }
        if let Some(c) = rhs.as_constant() {
            return Scalar { num: self.num.scale(&c), den: self.den }.renorm_zero();
        }
        Scalar::reduced_product(&self.num, &self.den, &rhs.num, &rhs.den)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.num.is_zero(), "division by zero");
        Scalar::reduced_product(&self.num, &self.den, &rhs.den, &rhs.num)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den }
    }
}

impl Scalar {
    /// `num/den` for coprime inputs: only the leading coefficient of `den` is normalized.
    fn reduced(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::constant(q(0));
        }
        let lc = den.leading().map(|(_, c)| c.recip()).expect("nonzero");
        Scalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// `(a/b)(c/d)` with `gcd(a, b) = gcd(c, d) = 1`, cancelling across the factors only.
    fn reduced_product(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Scalar {
        if a.is_zero() || c.is_zero() {
            return Scalar::constant(q(0));
        }
        let g1 = Poly::gcd(a, d);
        let g2 = Poly::gcd(c, b);
        let div = |p: &Poly, g: &Poly| if g.is_constant() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        Scalar::reduced(&div(a, &g1) * &div(c, &g2), &div(b, &g2) * &div(d, &g1))
    }

    fn renorm_zero(self) -> Scalar {
        if self.num.is_zero() {
            Scalar::constant(q(0))
        } else {
            self
        }
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::constant(q(0))
    }
    fn one() -> Self {
        Scalar::constant(q(1))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_q(v: &Q) -> Self {
        Scalar::constant(v.clone())
    }
    fn scale_q(&self, s: &Q) -> Self {
        if num_traits::Zero::is_zero(s) {
            return Self::zero();
        }
        Scalar { num: self.num.scale(s), den: self.den.clone() }
    }
    fn weight(&self) -> usize {
        16 * (self.num.len() + self.den.len()).saturating_sub(2) + (self.num.total_degree() + self.den.total_degree()) as usize
    }
}

impl DiffRing for Scalar {
    fn partial(&self, mu: usize) -> Self {
        let dn = self.num.partial(mu);
        if self.den.is_constant() {
            return Scalar::poly(dn);
        }
        let dd = self.den.partial(mu);
        if dd.is_zero() {
            return Scalar::new(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Scalar::new(num, &self.den * &self.den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
