//! Elements of `L = ∧W ⊗ CDerEnd(W)`, the bracket and the anchor.

use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::clifford::{grade, pos, wedge_sign, ExtElement, MultiVector, BLADES};
use crate::field::{DiffRing, Field, Q};
use crate::frames::{lambda_blade, CDer, NGEN};

pub const LDIM: usize = 16 * NGEN;

/// Flat coordinate of `θ_mask ⊗ generator`.
pub fn lidx(mask: u8, g: usize) -> usize {
    pos(mask) * NGEN + g
}

/// Monomial mask and generator of a flat coordinate.
pub fn lsplit(i: usize) -> (u8, usize) {
    (BLADES[i / NGEN], i % NGEN)
}

/// Flat coordinates of the degree-`k` part `Lᵏ`.
pub fn degree_coords(k: usize) -> Vec<usize> {
    (0..LDIM).filter(|&i| grade(lsplit(i).0) == k).collect()
}

/// Element of `L`, 176 coordinates: monomial-major, generator-minor.
#[derive(Clone, PartialEq, Debug)]
pub struct LElement<T> {
    pub c: Vec<T>,
}

impl<T: Field> LElement<T> {
    pub fn zero() -> Self {
        LElement { c: vec![T::zero(); LDIM] }
    }

    pub fn basis(mask: u8, g: usize) -> Self {
        let mut x = Self::zero();
        x.c[lidx(mask, g)] = T::one();
        x
    }

    pub fn from_vec(c: Vec<T>) -> Self {
        assert_eq!(c.len(), LDIM);
        LElement { c }
    }

    /// `θ_mask ⊗ d`.
    pub fn from_block(mask: u8, d: &CDer<T>) -> Self {
        let mut x = Self::zero();
        x.add_block(mask, d);
        x
    }

    /// `e ⊗ d` for an exterior element `e`.
    pub fn tensor(e: &ExtElement<T>, d: &CDer<T>) -> Self {
        let mut x = Self::zero();
        for (mask, v) in e.terms() {
            x.add_block(mask, &d.scale(v));
        }
        x
    }

    fn add_block(&mut self, mask: u8, d: &CDer<T>) {
        let base = pos(mask) * NGEN;
        for (g, v) in d.c.iter().enumerate() {
            if !v.is_zero() {
                self.c[base + g] = self.c[base + g].clone() + v.clone();
            }
        }
    }

    pub fn block(&self, mask: u8) -> CDer<T> {
        let base = pos(mask) * NGEN;
        CDer { c: self.c[base..base + NGEN].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        LElement { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = self.clone();
        for (i, x) in out.c.iter_mut().enumerate() {
            if grade(lsplit(i).0) != k {
                *x = T::zero();
            }
        }
        out
    }

    /// Degrees with a nonzero component.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = (0..LDIM).filter(|&i| !self.c[i].is_zero()).map(|i| grade(lsplit(i).0)).collect();
        g.sort();
        g.dedup();
        g
    }

    /// Left multiplication by an exterior element: `e · (θ_S y) = (e ∧ θ_S) y`.
    pub fn ext_mul(e: &ExtElement<T>, x: &Self) -> Self {
        let mut out = Self::zero();
        for &mask in &BLADES {
            let d = x.block(mask);
            if d.is_zero() {
                continue;
            }
            let prod = e.wedge(&MultiVector::blade(mask));
            out = out + Self::tensor(&prod, &d);
        }
        out
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> LElement<U> {
        LElement { c: self.c.iter().map(f).collect() }
    }

    fn nonzero_blocks(&self) -> Vec<(u8, CDer<T>)> {
        BLADES.iter().map(|&m| (m, self.block(m))).filter(|(_, d)| !d.is_zero()).collect()
    }
}

impl<T: DiffRing> LElement<T> {
    /// The graded bracket
    /// `[θ_S y, θ_T y'] = θ_S∧θ_T [y,y'] + (θ_S ∧ λ(y)θ_T) y' − (λ(y')θ_S ∧ θ_T) y`.
    pub fn bracket(&self, other: &Self) -> Self {
        let a = self.nonzero_blocks();
        let b = other.nonzero_blocks();
        let mut out = Self::zero();
        for (s, y) in &a {
            let my = y.matrix();
            for (t, y2) in &b {
                let sign = wedge_sign(*s, *t);
                if sign != 0 {
                    let br = y.bracket(y2);
                    let br = if sign > 0 { br } else { -br };
                    out.add_block(s | t, &br);
                }
                let lt = lambda_blade(&my, *t);
                if !lt.is_zero() {
                    let e = MultiVector::blade(*s).wedge(&lt);
                    out = out + Self::tensor(&e, y2);
                }
                let ls = lambda_blade(&y2.matrix(), *s);
                if !ls.is_zero() {
                    let e = ls.wedge(&MultiVector::blade(*t));
                    out = out - Self::tensor(&e, y);
                }
            }
        }
        out
    }

    /// The anchor `ρ(x)(b) = Σ_S θ_S ∧ λ(y_S)(b)`.
    pub fn anchor(&self, b: &ExtElement<T>) -> ExtElement<T> {
        let mut out = MultiVector::zero();
        for (s, y) in self.nonzero_blocks() {
            out = out + MultiVector::blade(s).wedge(&y.apply_ext(b));
        }
        out
    }
}

impl<T: Field> Add for LElement<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        LElement { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Field> Sub for LElement<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        LElement { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Field> Neg for LElement<T> {
    type Output = Self;
    fn neg(self) -> Self {
        LElement { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

type Sparse = Vec<(usize, Q)>;

/// Bracket of basis elements with constant coefficients, cached.
fn bracket_table() -> &'static Vec<Vec<Sparse>> {
    static TABLE: OnceLock<Vec<Vec<Sparse>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let basis: Vec<LElement<Q>> = (0..LDIM).map(|i| {
            let (m, g) = lsplit(i);
            LElement::basis(m, g)
        }).collect();
        basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let br = a.bracket(b);
                        br.c.into_iter().enumerate().filter(|(_, v)| !Field::is_zero(v)).collect()
                    })
                    .collect()
            })
            .collect()
    })
}

/// Fast bracket for constant-coefficient elements given as flat vectors.
pub fn bracket_const(x: &[Q], y: &[Q]) -> Vec<Q> {
    let table = bracket_table();
    let mut out = vec![<Q as Field>::zero(); LDIM];
    for (i, xi) in x.iter().enumerate() {
        if Field::is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if Field::is_zero(yj) {
                continue;
            }
            let p = xi * yj;
            for (k, v) in &table[i][j] {
                out[*k] += &p * v;
            }
        }
    }
    out
}

/// Matrix of the anchor on constant-coefficient elements: rows are the
/// coordinates of `ρ(x)(x^μ)` (4×16) followed by `ρ(x)(θ_i)` (4×16).
pub fn anchor_matrix(cols: &[usize]) -> Vec<Vec<Q>> {
    let mut rows = vec![vec![<Q as Field>::zero(); cols.len()]; 128];
    for (c, &i) in cols.iter().enumerate() {
        let (mask, g) = lsplit(i);
        let d = CDer::<Q>::generator(g);
        if g < 4 {
            rows[g * 16 + pos(mask)][c] = <Q as Field>::one();
        } else {
            for th in 0..4 {
                let img = MultiVector::<Q>::blade(mask).wedge(&d.apply_ext(&MultiVector::theta(th)));
                for (k, v) in img.c.iter().enumerate() {
                    if !Field::is_zero(v) {
                        rows[64 + th * 16 + k][c] = v.clone();
                    }
                }
            }
        }
    }
    rows
}
