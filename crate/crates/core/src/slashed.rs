//! Filtered Clifford modules: `L̸ = Cl ⊗ CDerEnd(W)`, the target `P̸`, the
//! morphism `f`, its kernel `I̸`, the freeness decomposition and `Gr`.
//!
//! `L̸` uses the same 176 flat coordinates as `L`, read with the Clifford
//! product. `P̸` has 144 coordinates: values on the coordinate functions
//! `x^μ` (`μ·16 + monomial`), values on `θ_i` (`64 + i·16 + monomial`) and
//! the action on the volume form (`128 + monomial`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::clifford::{clifford_sign, grade, in_layer, pos, wedge_sign, MultiVector, BLADES};
use crate::field::{q, Field, Q};
use crate::frames::{sigma_matrix, NGEN};
use crate::glaoid::{lidx, lsplit, Ideal, LDIM};
use crate::linalg::{kernel, rank, transpose, Mat, Subspace};

pub const PDIM: usize = 144;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlashedError {
    #[error("no free basis found: {0}")]
    DecompositionFailed(String),
}

/// Monomials in the filtration layer `⊲k`.
pub fn layer_masks(k: usize) -> Vec<u8> {
    BLADES.iter().copied().filter(|&m| in_layer(m, k)).collect()
}

/// Flat coordinates of `L̸^{⊲k}`.
pub fn l_layer(k: usize) -> Vec<usize> {
    (0..LDIM).filter(|&i| in_layer(lsplit(i).0, k)).collect()
}

/// Coordinates of `P̸^{⊲k}`.
pub fn p_layer(k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for mu in 0..4 {
        out.extend(layer_masks(k).into_iter().map(|m| mu * 16 + pos(m)));
    }
    for i in 0..4 {
        out.extend(layer_masks(k + 1).into_iter().map(|m| 64 + i * 16 + pos(m)));
    }
    out.extend(layer_masks(k).into_iter().map(|m| 128 + pos(m)));
    out.sort();
    out
}

/// Image of a basis element `θ_S ⊗ g` under `f` (or `Gr f` when `graded`).
fn f_column(mask: u8, g: usize, graded: bool) -> Vec<Q> {
    let mut col = vec![q(0); PDIM];
    if g < 4 {
        col[g * 16 + pos(mask)] = q(1);
        return col;
    }
    let m = sigma_matrix(g);
    let sign = if graded { wedge_sign } else { clifford_sign };
    for i in 0..4 {
        for j in 0..4 {
            if m[j][i] == 0 {
                continue;
            }
            let s = sign(mask, 1 << j);
            if s == 0 {
                continue;
            }
            col[64 + i * 16 + pos(mask ^ (1 << j))] += q(s * m[j][i]);
        }
    }
    let tr: i64 = (0..4).map(|i| m[i][i]).sum();
    if tr != 0 {
        col[128 + pos(mask)] += q(tr);
    }
    col
}

/// Matrix of `f: L̸ → P̸` (144 × 176).
pub fn f_matrix() -> Mat<Q> {
    let cols: Vec<Vec<Q>> = (0..LDIM).map(|i| {
        let (m, g) = lsplit(i);
        f_column(m, g, false)
    }).collect();
    transpose(&cols, PDIM)
}

/// Matrix of `Gr f`, the same formula with the exterior product.
pub fn gr_f_matrix() -> Mat<Q> {
    let cols: Vec<Vec<Q>> = (0..LDIM).map(|i| {
        let (m, g) = lsplit(i);
        f_column(m, g, true)
    }).collect();
    transpose(&cols, PDIM)
}

/// `f` applied to a flat vector.
pub fn f_apply(x: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); PDIM];
    for (i, v) in x.iter().enumerate() {
        if Field::is_zero(v) {
            continue;
        }
        let (m, g) = lsplit(i);
        for (o, c) in out.iter_mut().zip(f_column(m, g, false)) {
            if !Field::is_zero(&c) {
                *o += v * c;
            }
        }
    }
    out
}

/// Left Clifford multiplication by `θ_r` on `L̸`.
pub fn cl_left(r: u8, x: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); LDIM];
    for (i, v) in x.iter().enumerate() {
        if Field::is_zero(v) {
            continue;
        }
        let (m, g) = lsplit(i);
        let s = clifford_sign(r, m);
        out[lidx(r ^ m, g)] += v * q(s);
    }
    out
}

/// Left multiplication by a general Clifford element.
pub fn cl_left_mv(a: &MultiVector<Q>, x: &[Q]) -> Vec<Q> {
    let mut out = vec![q(0); LDIM];
    for (r, c) in a.terms() {
        for (o, v) in out.iter_mut().zip(cl_left(r, x)) {
            if !Field::is_zero(&v) {
                *o += c * v;
            }
        }
    }
    out
}

fn restrict_cols(m: &Mat<Q>, cols: &[usize]) -> Mat<Q> {
    m.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect()
}

fn embed(v: &[Q], cols: &[usize], dim: usize) -> Vec<Q> {
    let mut out = vec![q(0); dim];
    for (x, &c) in v.iter().zip(cols) {
        out[c] = x.clone();
    }
    out
}

/// Rank table of `Cl^{⊲k} ⊗ so(W) → Hom(W, Cl^{⊲k+1})`: (domain rank,
/// codomain rank, image rank) for `k = 0..4`.
pub fn auxiliary_table() -> Vec<(usize, usize, usize)> {
    (0..=4)
        .map(|k| {
            let masks = layer_masks(k);
            let cols: Vec<Vec<Q>> = masks
                .iter()
                .flat_map(|&m| (5..NGEN).map(move |g| f_column(m, g, false)[64..128].to_vec()))
                .collect();
            let left = cols.len();
            let right = 4 * layer_masks(k + 1).len();
            (left, right, rank(cols, 64))
        })
        .collect()
}

/// Everything computed about the slashed modules at the constant fiber.
#[derive(Clone, Debug)]
pub struct Slashed {
    pub f: Mat<Q>,
    /// `I̸^{⊲k}` for `k = 0..=4`.
    pub ideal: Vec<Subspace<Q>>,
    /// Indices of the generators spanning `A` inside `L̸^{⊲0}`.
    pub a_gens: Vec<usize>,
    /// Two elements of `I̸^{⊲2}` generating `I̸` freely.
    pub b: Vec<Vec<Q>>,
}

impl Slashed {
    pub fn build() -> Result<Slashed, SlashedError> {
        let f = f_matrix();
        let ideal: Vec<Subspace<Q>> = (0..=4)
            .map(|k| {
                let cols = l_layer(k);
                let ker = kernel(restrict_cols(&f, &cols), cols.len());
                Subspace::span(ker.into_iter().map(|v| embed(&v, &cols, LDIM)).collect(), LDIM)
            })
            .collect();
        let a_gens = vec![0, 1, 2, 3, 4, 5, 6, 7, 8];
        let b = find_b(&ideal[2], &a_gens)?;
        Ok(Slashed { f, ideal, a_gens, b })
    }

    pub fn l_ranks(&self) -> Vec<usize> {
        (0..=4).map(|k| l_layer(k).len()).collect()
    }

    pub fn p_ranks(&self) -> Vec<usize> {
        (0..=4).map(|k| p_layer(k).len()).collect()
    }

    /// Rank of `f(L̸^{⊲k})`.
    pub fn image_ranks(&self) -> Vec<usize> {
        (0..=4).map(|k| rank(restrict_cols(&self.f, &l_layer(k)), l_layer(k).len())).collect()
    }

    pub fn ideal_ranks(&self) -> Vec<usize> {
        self.ideal.iter().map(|s| s.dim()).collect()
    }

    /// Unfiltered rank of `I̸` (the layers `⊲3` and `⊲4` are complementary).
    pub fn ideal_total_rank(&self) -> usize {
        self.ideal[3].dim() + self.ideal[4].dim()
    }

    /// Whether `f(L̸^{⊲k}) ⊂ P̸^{⊲k}`.
    pub fn f_preserves_filtration(&self) -> bool {
        (0..=4).all(|k| {
            let allowed = p_layer(k);
            l_layer(k).iter().all(|&c| (0..PDIM).all(|r| Field::is_zero(&self.f[r][c]) || allowed.contains(&r)))
        })
    }

    /// `Cl · I̸^{⊲2}` as a subspace.
    pub fn cl_times_ideal2(&self) -> Subspace<Q> {
        let mut vecs = Vec::new();
        for b in &self.ideal[2].basis {
            for &r in &BLADES {
                vecs.push(cl_left(r, b));
            }
        }
        Subspace::span(vecs, LDIM)
    }

    /// Full unfiltered `I̸`.
    pub fn ideal_total(&self) -> Subspace<Q> {
        let mut vecs = self.ideal[3].basis.clone();
        vecs.extend(self.ideal[4].basis.clone());
        Subspace::span(vecs, LDIM)
    }

    /// The vectors `θ_R a_j` (144, `j`-major) of `Cl ⊗ A`.
    pub fn cl_a(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for &g in &self.a_gens {
            for &r in &BLADES {
                out.push(unit(lidx(r, g)));
            }
        }
        out
    }

    /// The vectors `θ_R b_j` (32) of `Cl ⊗ B`.
    pub fn cl_b(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for b in &self.b {
            for &r in &BLADES {
                out.push(cl_left(r, b));
            }
        }
        out
    }

    /// Even/odd counts of a list of homogeneous vectors.
    pub fn parity_split(vecs: &[Vec<Q>]) -> (usize, usize) {
        let mut even = 0;
        let mut odd = 0;
        for v in vecs {
            let i = v.iter().position(|x| !Field::is_zero(x)).expect("nonzero");
            if grade(lsplit(i).0) % 2 == 0 {
                even += 1;
            } else {
                odd += 1;
            }
        }
        (even, odd)
    }

    /// Top-degree parts of `I̸^{⊲k}`: the image of `Gr I̸` in `Lᵏ`.
    pub fn gr_ideal(&self, k: usize) -> Subspace<Q> {
        let vecs = self.ideal[k]
            .basis
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, x)| if grade(lsplit(i).0) == k { x.clone() } else { q(0) }).collect())
            .collect();
        Subspace::span(vecs, LDIM)
    }

    /// A filtered complement `C^{⊲k}` of `I̸^{⊲k}` in `L̸^{⊲k}` with
    /// `C^{⊲k−2} ⊂ C^{⊲k}`, built from top-degree coordinate vectors.
    /// Returns, per `k`, the coordinates added at that layer.
    pub fn filtered_complement(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for k in 0..=4 {
            let mut vecs = self.ideal[k].basis.clone();
            if k >= 2 {
                for j in (k % 2..k - 1).step_by(2) {
                    vecs.extend(out[j].iter().map(|&c| unit(c)));
                }
            }
            let mut r = rank(vecs.clone(), LDIM);
            let mut added = Vec::new();
            for c in l_layer(k).into_iter().filter(|&c| grade(lsplit(c).0) == k) {
                vecs.push(unit(c));
                let r2 = rank(vecs.clone(), LDIM);
                if r2 > r {
                    r = r2;
                    added.push(c);
                } else {
                    vecs.pop();
                }
            }
            out.push(added);
        }
        out
    }
}

fn unit(c: usize) -> Vec<Q> {
    let mut v = vec![q(0); LDIM];
    v[c] = q(1);
    v
}

/// Search `I̸^{⊲2}` for two elements completing `Cl ⊗ A` to a basis of `L̸`.
fn find_b(ideal2: &Subspace<Q>, a_gens: &[usize]) -> Result<Vec<Vec<Q>>, SlashedError> {
    let mut base: Vec<Vec<Q>> = Vec::new();
    for &g in a_gens {
        for &r in &BLADES {
            base.push(unit(lidx(r, g)));
        }
    }
    if rank(base.clone(), LDIM) != 16 * a_gens.len() {
        return Err(SlashedError::DecompositionFailed("Cl ⊗ A is not free".into()));
    }
    let orbit = |b: &Vec<Q>| BLADES.iter().map(|&r| cl_left(r, b)).collect::<Vec<_>>();
    let n = ideal2.dim();
    let mut candidates: Vec<Vec<Q>> = ideal2.basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..32 {
        let coeffs: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-2..=2))).collect();
        let mut v = vec![q(0); LDIM];
        for (c, b) in coeffs.iter().zip(&ideal2.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        candidates.push(v);
    }
    let target = 16 * (a_gens.len() + 2);
    for i in 0..candidates.len() {
        let mut s1 = base.clone();
        s1.extend(orbit(&candidates[i]));
        if rank(s1.clone(), LDIM) != base.len() + 16 {
            continue;
        }
        for j in i + 1..candidates.len() {
            let mut s2 = s1.clone();
            s2.extend(orbit(&candidates[j]));
            if rank(s2, LDIM) == target {
                return Ok(vec![candidates[i].clone(), candidates[j].clone()]);
            }
        }
    }
    Err(SlashedError::DecompositionFailed("no pair in I̸^{⊲2} completes Cl ⊗ A".into()))
}

/// Whether `Gr f` is surjective onto its graded target in degree `k`
/// (`(∧ᵏW)⁴ ⊕ (∧ᵏ⁺¹W)⁴ ⊕ ∧ᵏW`), with image and target ranks.
pub fn gr_f_degree(k: usize) -> (usize, usize) {
    let gf = gr_f_matrix();
    let cols: Vec<usize> = (0..LDIM).filter(|&i| grade(lsplit(i).0) == k).collect();
    let img = rank(restrict_cols(&gf, &cols), cols.len());
    let deg = |d: usize| BLADES.iter().filter(|&&m| grade(m) == d).count();
    (img, 4 * deg(k) + 4 * deg(k + 1) + deg(k))
}

/// Check that the top-degree part of `I̸` agrees with `I` in every degree.
pub fn gr_matches(sl: &Slashed, ideal: &Ideal) -> bool {
    (2..=4).all(|k| sl.gr_ideal(k).equals(&ideal.parts[k]))
}

/// Whether `Cl ⊗ A` has full rank 144.
pub fn a_is_free(sl: &Slashed) -> bool {
    rank(sl.cl_a(), LDIM) == 144
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glaoid::ideal_basis_explicit;

    #[test]
    fn rank_tables() {
        let sl = Slashed::build().unwrap();
        assert_eq!(sl.l_ranks(), vec![11, 44, 77, 88, 88]);
        assert_eq!(sl.p_ranks(), vec![21, 48, 67, 72, 72]);
        assert_eq!(sl.image_ranks(), vec![11, 44, 67, 72, 72]);
        assert_eq!(sl.ideal_ranks(), vec![0, 0, 10, 16, 16]);
        assert_eq!(sl.ideal_total_rank(), 32);
        assert!(sl.f_preserves_filtration());
    }

    #[test]
    fn auxiliary() {
        let t = auxiliary_table();
        let left: Vec<usize> = t.iter().map(|x| x.0).collect();
        let right: Vec<usize> = t.iter().map(|x| x.1).collect();
        assert_eq!(left, vec![6, 24, 42, 48, 48]);
        assert_eq!(right, vec![16, 28, 32, 32, 32]);
        let surj: Vec<bool> = t.iter().map(|x| x.1 == x.2).collect();
        assert_eq!(surj, vec![false, false, true, true, true]);
    }

    #[test]
    fn explicit_basis_is_in_kernel() {
        let sl = Slashed::build().unwrap();
        for b in ideal_basis_explicit() {
            assert!(f_apply(&b.c).iter().all(Field::is_zero));
            assert!(sl.ideal[2].contains(&b.c));
        }
        assert!(sl.cl_times_ideal2().equals(&sl.ideal_total()));
    }

    #[test]
    fn freeness_and_gr() {
        let sl = Slashed::build().unwrap();
        assert!(a_is_free(&sl));
        let mut all = sl.cl_a();
        all.extend(sl.cl_b());
        assert_eq!(rank(all, LDIM), 176);
        assert!(Subspace::span(sl.cl_b(), LDIM).equals(&sl.ideal_total()));
        assert_eq!(Slashed::parity_split(&sl.cl_a()), (72, 72));
        assert_eq!(Slashed::parity_split(&sl.cl_b()), (16, 16));
        let ideal = Ideal::standard();
        assert!(gr_matches(&sl, &ideal));
        let gr: Vec<usize> = (0..=4).map(|k| sl.gr_ideal(k).dim()).collect();
        assert_eq!(gr, vec![0, 0, 10, 16, 6]);
    }

    #[test]
    fn gr_of_split_sequence_is_split() {
        let sl = Slashed::build().unwrap();
        let comp = sl.filtered_complement();
        for k in 0..=4 {
            let top: Vec<usize> = (0..LDIM).filter(|&i| grade(lsplit(i).0) == k).collect();
            let gi = sl.gr_ideal(k);
            let mut vecs = gi.basis.clone();
            vecs.extend(comp[k].iter().map(|&c| unit(c)));
            assert_eq!(gi.dim() + comp[k].len(), top.len(), "degree {k}");
            assert_eq!(rank(vecs, LDIM), top.len());
        }
    }

    #[test]
    fn gr_f_is_not_surjective() {
        let (img, target) = gr_f_degree(0);
        assert!(img < target);
        let total: (usize, usize) = (0..=4).map(gr_f_degree).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        assert!(total.0 < total.1);
    }
}
