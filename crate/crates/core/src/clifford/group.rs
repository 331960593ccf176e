//! The finite Clifford group and the invariant Clifford average `π ∈ S²Cl`.

use std::ops::{Add, Mul, Sub};

use crate::field::{q, qf, Field, Q};

use super::{clifford_sign, grade, pos, MultiVector, BLADES};

/// `sign · θ_mask`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElt {
    pub sign: i8,
    pub mask: u8,
}

impl GroupElt {
    pub fn mul(self, other: GroupElt) -> GroupElt {
        let s = clifford_sign(self.mask, other.mask) as i8;
        GroupElt { sign: self.sign * other.sign * s, mask: self.mask ^ other.mask }
    }

    pub fn is_odd(self) -> bool {
        grade(self.mask) % 2 == 1
    }

    pub fn to_multivector<T: Field>(self) -> MultiVector<T> {
        MultiVector::blade_with(self.mask, T::from_i64(self.sign as i64))
    }
}

/// The 32 elements `±θ_S`, obtained by closing `{±1, θ_i}` under multiplication.
pub fn clifford_group() -> Vec<GroupElt> {
    let gens: Vec<GroupElt> = (0..4).map(|i| GroupElt { sign: 1, mask: 1 << i }).collect();
    let mut elems = vec![GroupElt { sign: 1, mask: 0 }, GroupElt { sign: -1, mask: 0 }];
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &gens {
                let h = f.mul(*g);
                if !elems.contains(&h) {
                    elems.push(h);
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    elems.sort_by_key(|e| (pos(e.mask), -e.sign));
    elems
}

/// `χ_i(f)` defined by `f θ_i = χ_i(f) θ_i f`.
pub fn character(i: usize, f: GroupElt) -> i64 {
    let bit = 1u8 << i;
    clifford_sign(f.mask, bit) * clifford_sign(bit, f.mask)
}

/// Element of `Cl ⊗ Cl`, coefficient `m[a][b]` of `θ_a ⊗ θ_b` (storage indices).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<T> {
    pub m: Vec<Vec<T>>,
}

impl<T: Field> Tensor2<T> {
    pub fn zero() -> Self {
        Tensor2 { m: vec![vec![T::zero(); 16]; 16] }
    }

    pub fn pure(a: &MultiVector<T>, b: &MultiVector<T>) -> Self {
        let mut out = Self::zero();
        for i in 0..16 {
            for j in 0..16 {
                out.m[i][j] = a.c[i].clone() * b.c[j].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Swap of tensor factors.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..16 {
            for j in 0..16 {
                out.m[j][i] = self.m[i][j].clone();
            }
        }
        out
    }

    /// Factorwise product `(a⊗b)(c⊗d) = ac ⊗ bd`, without a Koszul sign.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, &ma) in BLADES.iter().enumerate() {
            for (b, &mb) in BLADES.iter().enumerate() {
                let x = &self.m[a][b];
                if x.is_zero() {
                    continue;
                }
                for (c, &mc) in BLADES.iter().enumerate() {
                    for (d, &md) in BLADES.iter().enumerate() {
                        let y = &other.m[c][d];
                        if y.is_zero() {
                            continue;
                        }
                        let s = clifford_sign(ma, mc) * clifford_sign(mb, md);
                        let (i, j) = (pos(ma ^ mc), pos(mb ^ md));
                        let p = x.clone() * y.clone();
                        out.m[i][j] = if s > 0 { out.m[i][j].clone() + p } else { out.m[i][j].clone() - p };
                    }
                }
            }
        }
        out
    }

    /// Whether every term has even total degree.
    pub fn is_even(&self) -> bool {
        for (a, &ma) in BLADES.iter().enumerate() {
            for (b, &mb) in BLADES.iter().enumerate() {
                if !self.m[a][b].is_zero() && (grade(ma) + grade(mb)) % 2 == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Nonzero terms as `(weight, left monomial, right monomial)`.
    pub fn terms(&self) -> Vec<(T, u8, u8)> {
        let mut out = Vec::new();
        for (a, &ma) in BLADES.iter().enumerate() {
            for (b, &mb) in BLADES.iter().enumerate() {
                if !self.m[a][b].is_zero() {
                    out.push((self.m[a][b].clone(), ma, mb));
                }
            }
        }
        out
    }
}

impl<T: Field> Add for Tensor2<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (r, s) in self.m.iter_mut().zip(rhs.m) {
            for (x, y) in r.iter_mut().zip(s) {
                *x = x.clone() + y;
            }
        }
        self
    }
}

impl<T: Field> Sub for Tensor2<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (r, s) in self.m.iter_mut().zip(rhs.m) {
            for (x, y) in r.iter_mut().zip(s) {
                *x = x.clone() - y;
            }
        }
        self
    }
}

impl<T: Field> Mul for &Tensor2<T> {
    type Output = Tensor2<T>;
    fn mul(self, rhs: &Tensor2<T>) -> Tensor2<T> {
        Tensor2::mul(self, rhs)
    }
}

/// `π = (1/|F|) Σ_{f∈F} χ₀(f) f⊗f` for the standard frame.
pub fn invariant_average() -> Tensor2<Q> {
    let group = clifford_group();
    let mut out = Tensor2::zero();
    let w = qf(1, group.len() as i64);
    for f in group {
        let s = q(character(0, f));
        let fv: MultiVector<Q> = f.to_multivector();
        out = out + Tensor2::pure(&fv, &fv.scale_q(&(&s * &w)));
    }
    out
}

/// The same average built from other generators `e₀..e₃` (which must
/// satisfy the Clifford relations), with `χ₀` computed from the relation
/// `f e₀ = χ₀(f) e₀ f`.
pub fn invariant_average_with(gens: &[MultiVector<Q>; 4]) -> Tensor2<Q> {
    let mut out = Tensor2::zero();
    let count = 32;
    for &mask in &BLADES {
        let mut f = MultiVector::<Q>::one();
        for (i, g) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                f = f.clmul(g);
            }
        }
        let lhs = f.clmul(&gens[0]);
        let rhs = gens[0].clmul(&f);
        let chi = if lhs == rhs { q(1) } else if lhs == -rhs.clone() { q(-1) } else { panic!("generators do not satisfy the Clifford relations") };
        // f and −f contribute identically.
        let weight = chi * qf(2, count);
        out = out + Tensor2::pure(&f, &f.scale_q(&weight));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_and_characters() {
        let g = clifford_group();
        assert_eq!(g.len(), 32);
        for a in &g {
            for b in &g {
                assert!(g.contains(&a.mul(*b)));
                for i in 0..4 {
                    assert_eq!(character(i, a.mul(*b)), character(i, *a) * character(i, *b));
                }
            }
        }
        assert_eq!(character(0, GroupElt { sign: 1, mask: 1 }), 1);
        assert_eq!(character(0, GroupElt { sign: 1, mask: 2 }), -1);
    }

    #[test]
    fn average_is_even_idempotent_symmetric() {
        let p = invariant_average();
        assert!(p.is_even());
        assert_eq!(&p * &p, p);
        assert_eq!(p.swap(), p);
        assert_eq!(p.terms().len(), 16);
    }

    #[test]
    fn koszul_signed_product_breaks_idempotence() {
        let p = invariant_average();
        let mut sq = Tensor2::<Q>::zero();
        for (a, &ma) in BLADES.iter().enumerate() {
            for (b, &mb) in BLADES.iter().enumerate() {
                for (c, &mc) in BLADES.iter().enumerate() {
                    for (d, &md) in BLADES.iter().enumerate() {
                        let (x, y) = (&p.m[a][b], &p.m[c][d]);
                        if x.is_zero() || y.is_zero() {
                            continue;
                        }
                        let koszul = if grade(mb) * grade(mc) % 2 == 1 { -1 } else { 1 };
                        let s = koszul * clifford_sign(ma, mc) * clifford_sign(mb, md);
                        let (i, j) = (pos(ma ^ mc), pos(mb ^ md));
                        sq.m[i][j] = sq.m[i][j].clone() + x.clone() * y.clone() * q(s);
                    }
                }
            }
        }
        assert_ne!(sq, p);
    }
}
