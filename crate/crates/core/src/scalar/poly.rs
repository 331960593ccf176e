//! Sparse multivariate polynomials over `Q` in the coordinates `x⁰..x³`.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! lexicographic with `x0 > x1 > x2 > x3` and the last entry is the leading
//! term. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::field::{q, Q};

pub const NVARS: usize = 4;

pub type Mono = [u16; NVARS];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = [0; NVARS];
    for i in 0..NVARS {
        out[i] = a[i].checked_sub(b[i])?;
    }
    Some(out)
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        Poly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; NVARS];
        m[i] = 1;
        Self::monomial(m, q(1))
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == [0; NVARS])
    }

    /// Constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            Some(q(0))
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u16 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (mono_mul(k, m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn partial(&self, mu: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m[mu] > 0 {
                let mut k = *m;
                k[mu] -= 1;
                out.add_term(k, c * q(m[mu] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Q {
        let mut acc = q(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                for _ in 0..m[i] {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut r = self.clone();
        let mut quo = Poly::zero();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (*m, c.clone())) {
            let tm = mono_div(&rm, &dm)?;
            let tc = rc / &dc;
            r = &r - &d.mul_mono(&tm, &tc);
            quo.add_term(tm, tc);
        }
        Some(quo)
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Coefficients with respect to `x_v`, index = power.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let mut k = *m;
            let e = k[v] as usize;
            k[v] = 0;
            out[e].add_term(k, c.clone());
        }
        out
    }

    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    fn lc_in(&self, v: usize) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    fn prem_in(f: &Poly, g: &Poly, v: usize) -> Poly {
        let n = g.degree_in(v);
        let lc = g.lc_in(v);
        let mut r = f.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            let mut shift = [0; NVARS];
            shift[v] = dr - n;
            r = &(&lc * &r) - &(&lr * &g.mul_mono(&shift, &q(1)));
        }
        r
    }

    /// Substitutes `x_v = value`.
    fn substitute(&self, v: usize, value: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut k = *m;
            k[v] = 0;
            out.add_term(k, c * num_traits::Pow::pow(value, m[v] as u32));
        }
        out
    }

    fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
        let (mut f1, mut f2) = if a.degree_in(v) >= b.degree_in(v) { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
        while !f2.is_zero() {
            let r = Poly::prem_in(&f1, &f2, v).monic();
            f1 = f2;
            f2 = r;
        }
        f1
    }

    /// Greatest common divisor, normalized to be monic (1 for coprime inputs).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let used: Vec<usize> = (0..NVARS).filter(|&u| a.degree_in(u) > 0 || b.degree_in(u) > 0).collect();
        let x = *used.last().expect("nonconstant");
        if a.degree_in(x) == 0 {
            return Poly::gcd(a, &b.content_in(x));
        }
        if b.degree_in(x) == 0 {
            return Poly::gcd(&a.content_in(x), b);
        }
        if used.len() == 1 {
            return Poly::univariate_gcd(a, b, x);
        }
        let (ca, cb) = (a.content_in(x), b.content_in(x));
        let c = Poly::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let y = used[..used.len() - 1].iter().copied().min_by_key(|&u| pa.degree_in(u).min(pb.degree_in(u))).expect("two variables");
        (&c * &Poly::primitive_gcd(&pa, &pb, x, y)).monic()
    }

    /// Gcd of polynomials primitive in `x_x`, by evaluating `x_y` and interpolating.
    fn primitive_gcd(a: &Poly, b: &Poly, x: usize, y: usize) -> Poly {
        let (la, lb) = (a.lc_in(x), b.lc_in(x));
        let gamma = Poly::gcd(&la, &lb);
        let bound = gamma.degree_in(y) + a.degree_in(y).min(b.degree_in(y));
        let mut images: Vec<(Q, Poly)> = Vec::new();
        let mut deg_x = u16::MAX;
        let mut alpha = 0i64;
        loop {
            alpha += 1;
            let av = q(alpha);
            if la.substitute(y, &av).is_zero() || lb.substitute(y, &av).is_zero() {
                continue;
            }
            let g = Poly::gcd(&a.substitute(y, &av), &b.substitute(y, &av));
            let d = g.degree_in(x);
            if d == 0 {
                return Poly::one();
            }
            if d > deg_x {
                continue;
            }
            if d < deg_x {
                deg_x = d;
                images.clear();
            }
            let Some(scale) = gamma.substitute(y, &av).div_exact(&g.lc_in(x)) else { continue };
            images.push((av, &g * &scale));
            if images.len() <= bound as usize {
                continue;
            }
            let h = Poly::interpolate(&images, y);
            let pp = h.div_exact(&h.content_in(x)).expect("content divides");
            if a.div_exact(&pp).is_some() && b.div_exact(&pp).is_some() {
                return pp;
            }
            images.remove(0);
        }
    }

    /// Lagrange interpolation in `x_y` through `(α_i, p_i)`.
    fn interpolate(points: &[(Q, Poly)], y: usize) -> Poly {
        let mut out = Poly::zero();
        for (i, (ai, pi)) in points.iter().enumerate() {
            let mut basis = Poly::one();
            let mut denom = q(1);
            for (j, (aj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &(&Poly::var(y) - &Poly::constant(aj.clone()));
                    denom *= ai - aj;
                }
            }
            out = &out + &(&basis * pi).scale(&denom.recip());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{i}")),
            _ => parts.push(format!("x{i}^{e}")),
        }
    }
    parts.join("*")
}

fn fmt_q_abs(c: &Q) -> String {
    let a = if c < &Q::zero() { -c.clone() } else { c.clone() };
    crate::field::q_to_string(&a)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Q::zero();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = fmt_mono(m);
            let abs = fmt_q_abs(c);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Q> for Poly {
    fn from(c: Q) -> Self {
        Poly::constant(c)
    }
}
