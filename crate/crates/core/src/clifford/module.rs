//! Finite-dimensional `Z2`-graded `Cl`-modules over `Q` and the freeness test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{q, Field, Q};
use crate::linalg::{identity, is_zero_vec, mat_mul, mat_vec, rank, Mat, Subspace};

use super::{left_mul_matrix, right_mul_matrix, CliffordError, MultiVector, BLADES};

/// A real `Z2`-graded module given by the action matrices of `θ₀..θ₃` and the
/// parity of each basis vector (`true` = odd).
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub gens: [Mat<Q>; 4],
    pub odd: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct FreeModuleCheck {
    pub free: bool,
    /// Number of `Cl` summands when free.
    pub rank: Option<usize>,
    /// Even generators of a free basis, as coordinate vectors.
    pub basis: Vec<Vec<Q>>,
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.odd.len()
    }

    /// `Cl` acting on itself from the left.
    pub fn regular() -> Self {
        let gens = std::array::from_fn(|i| left_mul_matrix(&MultiVector::<Q>::theta(i)));
        let odd = BLADES.iter().map(|&m| m.count_ones() % 2 == 1).collect();
        GradedModule { gens, odd }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let gens = std::array::from_fn(|i| {
            let mut out: Mat<Q> = vec![vec![q(0); n + m]; n + m];
            for r in 0..n {
                for c in 0..n {
                    out[r][c] = self.gens[i][r][c].clone();
                }
            }
            for r in 0..m {
                for c in 0..m {
                    out[n + r][n + c] = other.gens[i][r][c].clone();
                }
            }
            out
        });
        let mut odd = self.odd.clone();
        odd.extend(&other.odd);
        GradedModule { gens, odd }
    }

    /// Action matrix of a general Clifford element.
    pub fn action(&self, x: &MultiVector<Q>) -> Mat<Q> {
        let n = self.dim();
        let mut out: Mat<Q> = vec![vec![q(0); n]; n];
        for (mask, c) in x.terms() {
            let mut m = identity::<Q>(n);
            for i in 0..4 {
                if mask & (1 << i) != 0 {
                    m = mat_mul(&m, &self.gens[i], n);
                }
            }
            for r in 0..n {
                for k in 0..n {
                    out[r][k] += &m[r][k] * c;
                }
            }
        }
        out
    }

    fn parity_matrix(&self) -> Mat<Q> {
        let n = self.dim();
        let mut p = identity::<Q>(n);
        for (i, &o) in self.odd.iter().enumerate() {
            if o {
                p[i][i] = q(-1);
            }
        }
        p
    }

    /// Check the Clifford relations and that the generators are odd.
    pub fn validate(&self) -> Result<(), CliffordError> {
        let n = self.dim();
        for g in &self.gens {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(CliffordError::NotAModule("generator matrix has wrong shape".into()));
            }
        }
        for i in 0..4 {
            for j in i..4 {
                let ab = mat_mul(&self.gens[i], &self.gens[j], n);
                let ba = mat_mul(&self.gens[j], &self.gens[i], n);
                let expect = if i == j { q(2 * super::square(i)) } else { q(0) };
                for r in 0..n {
                    for c in 0..n {
                        let want = if r == c { expect.clone() } else { q(0) };
                        if &ab[r][c] + &ba[r][c] != want {
                            return Err(CliffordError::NotAModule(format!("θ{i}θ{j} + θ{j}θ{i} relation fails")));
                        }
                    }
                }
            }
        }
        for (i, g) in self.gens.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    if self.odd[r] == self.odd[c] && !Field::is_zero(&g[r][c]) {
                        return Err(CliffordError::NotAModule(format!("θ{i} does not act as an odd map")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Check that `t` is even, `t² = 1` and `t ρ(m) t = ρ(P(m))`, with `P`
    /// fixing `θ₀` and negating `θ₁, θ₂, θ₃`.
    pub fn validate_involution(&self, t: &Mat<Q>) -> Result<(), CliffordError> {
        let n = self.dim();
        for r in 0..n {
            for c in 0..n {
                if self.odd[r] != self.odd[c] && !Field::is_zero(&t[r][c]) {
                    return Err(CliffordError::InvalidInvolution("T is not even".into()));
                }
            }
        }
        if mat_mul(t, t, n) != identity(n) {
            return Err(CliffordError::InvalidInvolution("T² ≠ 1".into()));
        }
        for i in 0..4 {
            let conj = mat_mul(&mat_mul(t, &self.gens[i], n), t, n);
            let sign = if i == 0 { q(1) } else { q(-1) };
            let want: Mat<Q> = self.gens[i].iter().map(|r| r.iter().map(|x| x * &sign).collect()).collect();
            if conj != want {
                return Err(CliffordError::InvalidInvolution(format!("T θ{i} T ≠ P(θ{i})")));
            }
        }
        Ok(())
    }

    /// The graded submodule `Cl · span(vectors)`; the vectors must be homogeneous.
    pub fn submodule(&self, vectors: &[Vec<Q>]) -> Self {
        let n = self.dim();
        let p = self.parity_matrix();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in vectors {
            for &mask in &BLADES {
                let w = mat_vec(&self.action(&MultiVector::blade(mask)), v);
                let pw = mat_vec(&p, &w);
                if pw == w {
                    even.push(w);
                } else {
                    odd.push(w);
                }
            }
        }
        let even = Subspace::span(even, n).basis;
        let odd = Subspace::span(odd, n).basis;
        let mut basis = even.clone();
        basis.extend(odd.clone());
        let parity: Vec<bool> = (0..even.len()).map(|_| false).chain((0..odd.len()).map(|_| true)).collect();
        let space = Subspace::span(basis.clone(), n);
        let k = basis.len();
        let gens = std::array::from_fn(|i| {
            let images: Vec<Vec<Q>> = basis.iter().map(|b| mat_vec(&self.gens[i], b)).collect();
            let mut out: Mat<Q> = vec![vec![q(0); k]; k];
            for (c, img) in images.iter().enumerate() {
                let coords = coords_in(&basis, &space, img);
                for r in 0..k {
                    out[r][c] = coords[r].clone();
                }
            }
            out
        });
        GradedModule { gens, odd: parity }
    }
}

/// Coordinates of `v` (assumed to lie in the span) in terms of `basis`.
fn coords_in(basis: &[Vec<Q>], space: &Subspace<Q>, v: &[Q]) -> Vec<Q> {
    let n = v.len();
    let k = basis.len();
    let a: Mat<Q> = (0..n).map(|r| (0..k).map(|c| basis[c][r].clone()).collect()).collect();
    debug_assert!(space.contains(v));
    crate::linalg::solve(&a, v, k).expect("vector lies in the submodule")
}

/// Matrix of `m ↦ θ₀ m θ₀` on `Cl`, a valid `T` for the regular module.
pub fn regular_involution() -> Mat<Q> {
    let th0 = MultiVector::<Q>::theta(0);
    mat_mul(&left_mul_matrix(&th0), &right_mul_matrix(&th0), 16)
}

/// Decide freeness of a graded module by exhibiting a free basis.
///
/// If `t` is given it is validated first. Free generators are searched among
/// seeded random even vectors: each must generate a 16-dimensional submodule
/// meeting the span of the previous ones trivially.
pub fn check_free_module(m: &GradedModule, t: Option<&Mat<Q>>) -> Result<FreeModuleCheck, CliffordError> {
    m.validate()?;
    if let Some(t) = t {
        m.validate_involution(t)?;
    }
    let n = m.dim();
    let not_free = FreeModuleCheck { free: false, rank: None, basis: Vec::new() };
    if n % 16 != 0 {
        return Ok(not_free);
    }
    let actions: Vec<Mat<Q>> = BLADES.iter().map(|&b| m.action(&MultiVector::blade(b))).collect();
    let even_idx: Vec<usize> = (0..n).filter(|&i| !m.odd[i]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut spanned: Vec<Vec<Q>> = Vec::new();
    let mut basis = Vec::new();
    let mut attempts = 0;
    while spanned.len() < n {
        attempts += 1;
        if attempts > 64 {
            return Ok(not_free);
        }
        let mut v = vec![q(0); n];
        for &i in &even_idx {
            v[i] = q(rng.gen_range(-3..=3));
        }
        if is_zero_vec(&v) {
            continue;
        }
        let orbit: Vec<Vec<Q>> = actions.iter().map(|a| mat_vec(a, &v)).collect();
        let mut trial = spanned.clone();
        trial.extend(orbit);
        if rank(trial.clone(), n) == spanned.len() + 16 {
            spanned = trial;
            basis.push(v);
        }
    }
    Ok(FreeModuleCheck { free: true, rank: Some(n / 16), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qf;

    #[test]
    fn regular_module_is_free() {
        let m = GradedModule::regular();
        let t = regular_involution();
        let r = check_free_module(&m, Some(&t)).unwrap();
        assert!(r.free);
        assert_eq!(r.rank, Some(1));
    }

    #[test]
    fn sum_of_two_is_free() {
        let m = GradedModule::regular().direct_sum(&GradedModule::regular());
        let t0 = regular_involution();
        let mut t: Mat<Q> = vec![vec![q(0); 32]; 32];
        for r in 0..16 {
            for c in 0..16 {
                t[r][c] = t0[r][c].clone();
                t[16 + r][16 + c] = t0[r][c].clone();
            }
        }
        let r = check_free_module(&m, Some(&t)).unwrap();
        assert_eq!(r.rank, Some(2));
    }

    #[test]
    fn half_spinor_summand_is_not_free() {
        let reg = GradedModule::regular();
        // (1 + θ₀θ₃)/2 is an even idempotent; Cl·p is half of Cl.
        let mut p = vec![q(0); 16];
        p[0] = qf(1, 2);
        p[super::super::pos(0b1001)] = qf(1, 2);
        let half = reg.submodule(&[p]);
        assert_eq!(half.dim(), 8);
        half.validate().unwrap();
        assert!(!check_free_module(&half, None).unwrap().free);
    }

    #[test]
    fn parity_sign_on_involution_is_rejected() {
        let m = GradedModule::regular();
        let mut t = regular_involution();
        for (i, row) in t.iter_mut().enumerate() {
            if m.odd[i] {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        assert!(m.validate_involution(&t).is_err());
    }

    #[test]
    fn broken_relations_are_reported() {
        let mut m = GradedModule::regular();
        m.gens[1] = m.gens[2].clone();
        assert!(matches!(m.validate(), Err(CliffordError::NotAModule(_))));
    }
}
