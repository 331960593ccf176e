//! The exterior algebra `∧W` and Clifford algebra `Cl(W)` on the frame
//! `θ₀..θ₃` with inner product `diag(−1, 1, 1, 1)`.
//!
//! Both algebras share the 16-dimensional monomial basis; a monomial is a
//! 4-bit mask with bit `i` standing for `θ_i`. Coordinates are stored in the
//! order `1, θ0, θ1, θ2, θ3, θ01, θ02, θ03, θ12, θ13, θ23, θ012, θ013, θ023,
//! θ123, θ0123` (by degree, then lexicographically). The canonical linear
//! isomorphism `Cl ≅ ∧W` is the identity on coordinates.

mod group;
mod module;

pub use group::{character, clifford_group, invariant_average, invariant_average_with, GroupElt, Tensor2};
pub use module::{check_free_module, regular_involution, FreeModuleCheck, GradedModule};

use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::field::{Field, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("module relations fail: {0}")]
    NotAModule(String),
    #[error("involution T is invalid: {0}")]
    InvalidInvolution(String),
}

/// Monomial masks in storage order.
pub const BLADES: [u8; 16] = [0, 1, 2, 4, 8, 3, 5, 9, 6, 10, 12, 7, 11, 13, 14, 15];

const fn build_pos() -> [usize; 16] {
    let mut out = [0; 16];
    let mut i = 0;
    while i < 16 {
        out[BLADES[i] as usize] = i;
        i += 1;
    }
    out
}

const POS: [usize; 16] = build_pos();

/// Storage index of a monomial mask.
pub fn pos(mask: u8) -> usize {
    POS[mask as usize]
}

pub fn grade(mask: u8) -> usize {
    mask.count_ones() as usize
}

/// `⟨θ_i, θ_i⟩`; the frame is orthogonal.
pub fn metric(i: usize) -> i64 {
    if i == 0 {
        -1
    } else {
        1
    }
}

/// `θ_i θ_i = −⟨θ_i, θ_i⟩`.
fn square(i: usize) -> i64 {
    -metric(i)
}

/// Parity of the number of transpositions sorting the word `a` followed by `b`.
pub fn reorder_sign(a: u8, b: u8) -> i64 {
    let mut swaps = 0;
    for i in 0..4 {
        if a & (1 << i) != 0 {
            swaps += (b & ((1 << i) - 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `θ_a θ_b = sign · θ_{a xor b}` in `Cl`.
pub fn clifford_sign(a: u8, b: u8) -> i64 {
    let mut s = reorder_sign(a, b);
    let common = a & b;
    for i in 0..4 {
        if common & (1 << i) != 0 {
            s *= square(i);
        }
    }
    s
}

/// `θ_a ∧ θ_b = sign · θ_{a | b}`, or zero on overlap.
pub fn wedge_sign(a: u8, b: u8) -> i64 {
    if a & b != 0 {
        0
    } else {
        reorder_sign(a, b)
    }
}

/// Sign of the transpose of a monomial of degree `k`: `(−1)^{k(k−1)/2}`.
pub fn transpose_sign(mask: u8) -> i64 {
    let k = grade(mask);
    if (k * (k.saturating_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether a monomial lies in the filtration layer `⊲k`: degree at most `k`
/// and of the same parity as `k`.
pub fn in_layer(mask: u8, k: usize) -> bool {
    let g = grade(mask);
    g <= k && (k - g) % 2 == 0
}

pub fn monomial_name(mask: u8) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..4).filter(|i| mask & (1 << i) != 0).map(|i| format!("θ{i}")).collect()
}

/// An element of `∧W` or `Cl(W)`, 16 coordinates in [`BLADES`] order.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiVector<T> {
    pub c: Vec<T>,
}

/// Same coordinates; the product used is [`MultiVector::wedge`].
pub type ExtElement<T> = MultiVector<T>;

impl<T: Field> MultiVector<T> {
    pub fn zero() -> Self {
        MultiVector { c: vec![T::zero(); 16] }
    }

    pub fn scalar(v: T) -> Self {
        let mut m = Self::zero();
        m.c[0] = v;
        m
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    pub fn blade(mask: u8) -> Self {
        Self::blade_with(mask, T::one())
    }

    pub fn blade_with(mask: u8, v: T) -> Self {
        let mut m = Self::zero();
        m.c[pos(mask)] = v;
        m
    }

    pub fn theta(i: usize) -> Self {
        Self::blade(1 << i)
    }

    /// `Σ w_i θ_i`.
    pub fn vector(w: &[T; 4]) -> Self {
        let mut m = Self::zero();
        for (i, wi) in w.iter().enumerate() {
            m.c[pos(1 << i)] = wi.clone();
        }
        m
    }

    pub fn get(&self, mask: u8) -> &T {
        &self.c[pos(mask)]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &T)> {
        BLADES.iter().zip(&self.c).filter(|(_, v)| !v.is_zero()).map(|(m, v)| (*m, v))
    }

    pub fn scale(&self, s: &T) -> Self {
        MultiVector { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        MultiVector { c: self.c.iter().map(|x| x.scale_q(s)).collect() }
    }

    fn product(&self, other: &Self, sign: fn(u8, u8) -> i64) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let s = sign(a, b);
                if s == 0 {
                    continue;
                }
                let idx = pos(a ^ b);
                let p = x.clone() * y.clone();
                out.c[idx] = if s > 0 { out.c[idx].clone() + p } else { out.c[idx].clone() - p };
            }
        }
        out
    }

    /// Clifford product.
    pub fn clmul(&self, other: &Self) -> Self {
        self.product(other, clifford_sign)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        self.product(other, wedge_sign)
    }

    /// The anti-automorphism of `Cl` fixing `W`.
    pub fn transpose(&self) -> Self {
        let mut out = self.clone();
        for (i, &m) in BLADES.iter().enumerate() {
            if transpose_sign(m) < 0 {
                out.c[i] = -out.c[i].clone();
            }
        }
        out
    }

    /// Parity automorphism: `(−1)^{deg}` on monomials.
    pub fn parity_flip(&self) -> Self {
        let mut out = self.clone();
        for (i, &m) in BLADES.iter().enumerate() {
            if grade(m) % 2 == 1 {
                out.c[i] = -out.c[i].clone();
            }
        }
        out
    }

    pub fn grade_part(&self, k: usize) -> Self {
        self.filter(|m| grade(m) == k)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| grade(m) % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| grade(m) % 2 == 1)
    }

    pub fn filter(&self, keep: impl Fn(u8) -> bool) -> Self {
        let mut out = self.clone();
        for (i, &m) in BLADES.iter().enumerate() {
            if !keep(m) {
                out.c[i] = T::zero();
            }
        }
        out
    }

    /// Highest degree present, `None` for zero.
    pub fn filtration_level(&self) -> Option<usize> {
        self.terms().map(|(m, _)| grade(m)).max()
    }

    /// `Some(false)` if even, `Some(true)` if odd, `None` if mixed or zero.
    pub fn parity(&self) -> Option<bool> {
        let even = !self.even_part().is_zero();
        let odd = !self.odd_part().is_zero();
        match (even, odd) {
            (true, false) => Some(false),
            (false, true) => Some(true),
            _ => None,
        }
    }

    /// Exterior multiplication `e_w` by a vector.
    pub fn e(w: &[T; 4], x: &Self) -> Self {
        Self::vector(w).wedge(x)
    }

    /// Contraction `i_w`, the odd derivation with `i_{θ_j} θ_j = −⟨θ_j, θ_j⟩`.
    pub fn i(w: &[T; 4], x: &Self) -> Self {
        let mut out = Self::zero();
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            let bit = 1u8 << j;
            for (m, v) in x.terms() {
                if m & bit == 0 {
                    continue;
                }
                let s = clifford_sign(bit, m);
                let idx = pos(m ^ bit);
                let p = wj.clone() * v.clone();
                out.c[idx] = if s > 0 { out.c[idx].clone() + p } else { out.c[idx].clone() - p };
            }
        }
        out
    }

    /// `c_w = e_w + i_w`, the Clifford action of `w` transported to `∧W`.
    pub fn c(w: &[T; 4], x: &Self) -> Self {
        Self::e(w, x) + Self::i(w, x)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> MultiVector<U> {
        MultiVector { c: self.c.iter().map(f).collect() }
    }

    pub fn to_golden(&self) -> Vec<(String, String)>
    where
        T: std::fmt::Display,
    {
        self.terms().map(|(m, v)| (monomial_name(m), v.to_string())).collect()
    }
}

/// `Cl → ∧W` along the monomial basis.
pub fn cl_to_ext<T: Field>(a: &MultiVector<T>) -> ExtElement<T> {
    a.clone()
}

/// Inverse of [`cl_to_ext`].
pub fn ext_to_cl<T: Field>(a: &ExtElement<T>) -> MultiVector<T> {
    a.clone()
}

impl<T: Field> Add for MultiVector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        MultiVector { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Field> Sub for MultiVector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        MultiVector { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Field> Neg for MultiVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiVector { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

/// Matrix (16×16, column `j` = image of monomial `j`) of left Clifford
/// multiplication by `x`.
pub fn left_mul_matrix<T: Field>(x: &MultiVector<T>) -> Vec<Vec<T>> {
    let cols: Vec<MultiVector<T>> = BLADES.iter().map(|&m| x.clmul(&MultiVector::blade(m))).collect();
    (0..16).map(|i| cols.iter().map(|c| c.c[i].clone()).collect()).collect()
}

/// Matrix of right Clifford multiplication by `x`.
pub fn right_mul_matrix<T: Field>(x: &MultiVector<T>) -> Vec<Vec<T>> {
    let cols: Vec<MultiVector<T>> = BLADES.iter().map(|&m| MultiVector::blade(m).clmul(x)).collect();
    (0..16).map(|i| cols.iter().map(|c| c.c[i].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    type Mv = MultiVector<Q>;

    fn t(mask: u8) -> Mv {
        Mv::blade(mask)
    }

    #[test]
    fn basis_order() {
        for (i, &m) in BLADES.iter().enumerate() {
            assert_eq!(pos(m), i);
        }
        assert_eq!(monomial_name(0b1011), "θ0θ1θ3");
    }

    #[test]
    fn clifford_examples() {
        assert_eq!(t(1).clmul(&t(1)), Mv::one());
        assert_eq!(t(2).clmul(&t(4)), t(6));
        assert_eq!(t(4).clmul(&t(2)), -t(6));
        assert_eq!(t(3).clmul(&t(3)), Mv::one());
        assert_eq!(t(2).clmul(&t(2)), -Mv::one());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(t(3).transpose(), -t(3));
        assert_eq!(t(14).transpose(), -t(14));
        assert_eq!(Mv::one().transpose(), Mv::one());
        let (a, b) = (t(3) + t(8), t(14) + t(4).scale_q(&q(3)));
        assert_eq!(a.clmul(&b).transpose(), b.transpose().clmul(&a.transpose()));
    }

    #[test]
    fn exterior_to_clifford_action() {
        let th0 = [q(1), q(0), q(0), q(0)];
        let th1 = [q(0), q(1), q(0), q(0)];
        assert_eq!(cl_to_ext(&t(3)), t(3));
        assert_eq!(Mv::c(&th0, &t(3)), t(2));
        assert_eq!(Mv::c(&th1, &Mv::one()), t(2));
        for &m in &BLADES {
            for j in 0..4 {
                let mut w = [q(0), q(0), q(0), q(0)];
                w[j] = q(1);
                assert_eq!(Mv::c(&w, &t(m)), Mv::theta(j).clmul(&t(m)));
            }
        }
    }

    #[test]
    fn wedge_is_graded_commutative() {
        for &a in &BLADES {
            for &b in &BLADES {
                let s = if (grade(a) * grade(b)) % 2 == 0 { q(1) } else { q(-1) };
                assert_eq!(t(a).wedge(&t(b)), t(b).wedge(&t(a)).scale_q(&s));
            }
        }
        assert!(t(2).wedge(&t(2)).is_zero());
    }

    #[test]
    fn layers() {
        assert!(in_layer(0, 2) && in_layer(3, 2) && !in_layer(1, 2) && !in_layer(7, 2));
        assert_eq!(BLADES.iter().filter(|&&m| in_layer(m, 4)).count(), 8);
    }
}
