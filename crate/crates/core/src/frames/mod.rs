//! Conformal module derivations of `W`: the σ-basis, the lift to
//! degree-0 derivations of `∧W`, brackets, and `so(W)`.
//!
//! A [`CDer`] has 11 coordinates: `∂̂₀..∂̂₃` (lifted vector fields that
//! annihilate the frame), then `σ₀, σ₁, σ₂, σ₃, σ₂₃, σ₃₁, σ₁₂`.

mod isotypic;

pub use isotypic::{check_representation, isotypic_decompose, projectors, IsotypicComponent, IsotypicError, IsotypicLabel};

use std::ops::{Add, Neg, Sub};

use crate::clifford::{MultiVector, BLADES};
use crate::field::{DiffRing, Field, Q};
use crate::scalar::Scalar;

pub const NGEN: usize = 11;

pub const GEN_NAMES: [&str; NGEN] = ["∂̂0", "∂̂1", "∂̂2", "∂̂3", "σ0", "σ1", "σ2", "σ3", "σ23", "σ31", "σ12"];

pub const SIGMA0: usize = 4;
/// Boosts `σ₁, σ₂, σ₃`.
pub const BOOSTS: [usize; 3] = [5, 6, 7];
/// Rotations `σ₂₃, σ₃₁, σ₁₂`.
pub const ROTATIONS: [usize; 3] = [8, 9, 10];

/// 4×4 matrix `M[j][i]` = coefficient of `θ_j` in `σ(θ_i)` for the vertical
/// generator with coordinate index `g` (4..=10).
pub fn sigma_matrix(g: usize) -> [[i64; 4]; 4] {
    let mut m = [[0; 4]; 4];
    match g {
        4 => {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
        }
        5..=7 => {
            let k = g - 4;
            m[k][0] = 1;
            m[0][k] = 1;
        }
        8..=10 => {
            let (i, j) = [(2, 3), (3, 1), (1, 2)][g - 8];
            m[i][j] = 1;
            m[j][i] = -1;
        }
        _ => panic!("not a vertical generator: {g}"),
    }
    m
}

/// A conformal module derivation with coefficients in `T`.
#[derive(Clone, PartialEq, Debug)]
pub struct CDer<T> {
    pub c: Vec<T>,
}

impl<T: Field> CDer<T> {
    pub fn zero() -> Self {
        CDer { c: vec![T::zero(); NGEN] }
    }

    pub fn generator(g: usize) -> Self {
        let mut d = Self::zero();
        d.c[g] = T::one();
        d
    }

    pub fn lifted(mu: usize) -> Self {
        Self::generator(mu)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        CDer { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn vector_field(&self) -> &[T] {
        &self.c[..4]
    }

    pub fn vertical(&self) -> &[T] {
        &self.c[4..]
    }

    /// The vertical part as a 4×4 matrix, `M[j][i]` = coefficient of `θ_j` in `δ(θ_i)`.
    pub fn matrix(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); 4]; 4];
        for g in 4..NGEN {
            if self.c[g].is_zero() {
                continue;
            }
            let s = sigma_matrix(g);
            for j in 0..4 {
                for i in 0..4 {
                    match s[j][i] {
                        0 => {}
                        1 => out[j][i] = out[j][i].clone() + self.c[g].clone(),
                        _ => out[j][i] = out[j][i].clone() - self.c[g].clone(),
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`CDer::matrix`]; `None` if `m` is not of the conformal form.
    pub fn from_matrix(vector_field: &[T], m: &[Vec<T>]) -> Option<Self> {
        let mut d = Self::zero();
        for mu in 0..4 {
            d.c[mu] = vector_field[mu].clone();
        }
        d.c[SIGMA0] = m[0][0].clone();
        for k in 1..4 {
            d.c[4 + k] = m[k][0].clone();
        }
        d.c[8] = m[2][3].clone();
        d.c[9] = m[3][1].clone();
        d.c[10] = m[1][2].clone();
        if d.matrix() == m {
            Some(d)
        } else {
            None
        }
    }

    /// Trace of the vertical part on `W`.
    pub fn trace(&self) -> T {
        self.c[SIGMA0].scale_q(&crate::field::q(4))
    }

    /// The scalar `f` with `δ⟨x,y⟩ = ⟨δx,y⟩ + ⟨x,δy⟩ + f⟨x,y⟩`.
    pub fn conformal_factor(&self) -> T {
        self.c[SIGMA0].scale_q(&crate::field::q(-2))
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> CDer<U> {
        CDer { c: self.c.iter().map(f).collect() }
    }
}

impl<T: DiffRing> CDer<T> {
    /// Action on functions: only the vector field part contributes.
    pub fn apply_scalar(&self, f: &T) -> T {
        let mut acc = T::zero();
        for mu in 0..4 {
            if !self.c[mu].is_zero() {
                acc = acc + self.c[mu].clone() * f.partial(mu);
            }
        }
        acc
    }

    /// Action on `W = span(θ₀..θ₃)`.
    pub fn apply_vector(&self, w: &[T]) -> Vec<T> {
        let m = self.matrix();
        (0..4)
            .map(|j| {
                let mut acc = self.apply_scalar(&w[j]);
                for i in 0..4 {
                    acc.add_mul_assign(&m[j][i], &w[i]);
                }
                acc
            })
            .collect()
    }

    /// The degree-0 derivation `λ(δ)` of `∧W` extending the actions on
    /// functions and on `W`.
    pub fn apply_ext(&self, x: &MultiVector<T>) -> MultiVector<T> {
        let m = self.matrix();
        let mut out: MultiVector<T> = MultiVector::zero();
        for (k, &mask) in BLADES.iter().enumerate() {
            let coeff = &x.c[k];
            if coeff.is_zero() {
                continue;
            }
            let dc = self.apply_scalar(coeff);
            if !dc.is_zero() {
                out.c[k] = out.c[k].clone() + dc;
            }
            out = out + lambda_blade(&m, mask).scale(coeff);
        }
        out
    }

    /// Commutator of derivations.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for nu in 0..4 {
            out.c[nu] = self.apply_scalar(&other.c[nu]) - other.apply_scalar(&self.c[nu]);
        }
        let (m1, m2) = (self.matrix(), other.matrix());
        let mut m = vec![vec![T::zero(); 4]; 4];
        for j in 0..4 {
            for i in 0..4 {
                let mut acc = self.apply_scalar(&m2[j][i]) - other.apply_scalar(&m1[j][i]);
                for k in 0..4 {
                    acc.add_mul_assign(&m1[j][k], &m2[k][i]);
                    acc.sub_mul_assign(&m2[j][k], &m1[k][i]);
                }
                m[j][i] = acc;
            }
        }
        let v = out.c[..4].to_vec();
        Self::from_matrix(&v, &m).expect("bracket of conformal derivations is conformal")
    }
}

/// `λ(δ)(θ_S)` for the vertical matrix `m`, by the Leibniz rule over the factors.
pub fn lambda_blade<T: Field>(m: &[Vec<T>], mask: u8) -> MultiVector<T> {
    let idx: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
    let mut out = MultiVector::zero();
    for pos in 0..idx.len() {
        let mut term = MultiVector::one();
        for (p, &i) in idx.iter().enumerate() {
            let factor = if p == pos {
                let col: [T; 4] = std::array::from_fn(|j| m[j][i].clone());
                MultiVector::vector(&col)
            } else {
                MultiVector::theta(i)
            };
            term = term.wedge(&factor);
        }
        out = out + term;
    }
    out
}

impl<T: Field> Add for CDer<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CDer { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Field> Sub for CDer<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CDer { c: self.c.into_iter().zip(rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Field> Neg for CDer<T> {
    type Output = Self;
    fn neg(self) -> Self {
        CDer { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

/// Coordinate indices of the `so(W)` basis `σ₁, σ₂, σ₃, σ₂₃, σ₃₁, σ₁₂`.
pub const SO_W: [usize; 6] = [5, 6, 7, 8, 9, 10];

pub fn so_w_basis<T: Field>() -> Vec<CDer<T>> {
    SO_W.iter().map(|&g| CDer::generator(g)).collect()
}

/// Structure constants of `so(W)` in the [`SO_W`] basis: `[e_a, e_b] = Σ_c s[a][b][c] e_c`.
pub fn so_w_structure() -> Vec<Vec<Vec<Q>>> {
    let basis = so_w_basis::<Q>();
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let br = a.bracket(b);
                    SO_W.iter().map(|&g| br.c[g].clone()).collect()
                })
                .collect()
        })
        .collect()
}

/// Matrices of `so(W)` acting on `W` (4×4, column = image of `θ_i`).
pub fn rep_on_w() -> Vec<Vec<Vec<Q>>> {
    SO_W.iter().map(|&g| CDer::<Q>::generator(g).matrix()).collect()
}

/// Matrices of `so(W)` acting on `∧ᵏW` in the monomial basis of that degree.
pub fn rep_on_ext(k: usize) -> Vec<Vec<Vec<Q>>> {
    let masks: Vec<u8> = BLADES.iter().copied().filter(|m| m.count_ones() as usize == k).collect();
    SO_W.iter()
        .map(|&g| {
            let d = CDer::<Q>::generator(g);
            let cols: Vec<MultiVector<Q>> = masks.iter().map(|&m| d.apply_ext(&MultiVector::blade(m))).collect();
            masks.iter().map(|&r| cols.iter().map(|c| c.get(r).clone()).collect()).collect()
        })
        .collect()
}

/// Adjoint representation of `so(W)` on itself.
pub fn rep_adjoint() -> Vec<Vec<Vec<Q>>> {
    let s = so_w_structure();
    (0..6).map(|a| (0..6).map(|c| (0..6).map(|b| s[a][b][c].clone()).collect()).collect()).collect()
}

/// Whether `w = Σ w_i θ_i` lies in the future cone `W₊` at every sample point:
/// `w₀ > 0` and `w₀² − w₁² − w₂² − w₃² > 0`.
pub fn in_future_cone(w: &[Scalar; 4], samples: &[[Q; 4]]) -> bool {
    samples.iter().all(|p| {
        let vals: Option<Vec<Q>> = w.iter().map(|c| c.eval(p)).collect();
        let Some(v) = vals else { return false };
        let zero = Q::from_integer(0.into());
        let norm = &v[0] * &v[0] - &v[1] * &v[1] - &v[2] * &v[2] - &v[3] * &v[3];
        v[0] > zero && norm > zero
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    type D = CDer<Q>;

    fn th(i: usize) -> Vec<Q> {
        (0..4).map(|j| if i == j { q(1) } else { q(0) }).collect()
    }

    #[test]
    fn sigma_actions() {
        let s1 = D::generator(5);
        assert_eq!(s1.apply_vector(&th(0)), th(1));
        assert_eq!(s1.apply_vector(&th(2)), vec![q(0); 4]);
        let s23 = D::generator(8);
        assert_eq!(s23.apply_vector(&th(3)), th(2));
        let m2: Vec<Q> = th(3).into_iter().map(|x| -x).collect();
        assert_eq!(s23.apply_vector(&th(2)), m2);
    }

    #[test]
    fn lifted_derivative_annihilates_frame() {
        let x0: Scalar = "x0".parse().unwrap();
        let d = CDer::<Scalar>::lifted(0);
        let v = MultiVector::theta(1).scale(&x0);
        assert_eq!(d.apply_ext(&v), MultiVector::theta(1));
    }

    #[test]
    fn brackets() {
        let br = D::generator(8).bracket(&D::generator(9));
        assert_eq!(br, -D::generator(10));
        let br = D::generator(5).bracket(&D::generator(6));
        assert_eq!(br, D::generator(10));
        let x0: Scalar = "x0".parse().unwrap();
        let a = CDer::<Scalar>::lifted(0);
        let b = CDer::<Scalar>::generator(5).scale(&x0);
        assert_eq!(a.bracket(&b), CDer::generator(5));
    }

    #[test]
    fn traces_and_factors() {
        for g in SO_W {
            assert_eq!(D::generator(g).trace(), q(0));
        }
        assert_eq!(D::generator(SIGMA0).trace(), q(4));
        assert_eq!(so_w_basis::<Q>().len(), 6);
    }

    #[test]
    fn conformal_property_holds_on_basis() {
        let eta = [q(-1), q(1), q(1), q(1)];
        for g in 4..NGEN {
            let d = D::generator(g);
            let m = d.matrix();
            let f = d.conformal_factor();
            for i in 0..4 {
                for j in 0..4 {
                    let lhs = q(0);
                    let rhs = &m[j][i] * &eta[j] + &m[i][j] * &eta[i] + if i == j { &f * &eta[i] } else { q(0) };
                    assert_eq!(lhs, rhs, "generator {g}, ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn future_cone() {
        let s = |t: &str| t.parse::<Scalar>().unwrap();
        let pts = [[q(0), q(0), q(0), q(0)], [q(1), q(2), q(3), q(5)]];
        assert!(in_future_cone(&[s("1"), s("0"), s("0"), s("0")], &pts));
        assert!(!in_future_cone(&[s("0"), s("1"), s("0"), s("0")], &pts));
        assert!(!in_future_cone(&[s("1 + x1"), s("0"), s("0"), s("0")], &[[q(0), q(-2), q(0), q(0)]]));
    }
}
