//! The spinor functor at a constant fiber: `W_V ⊂ V ⊗ V̄` for a complex
//! plane `V`, the frame correspondence, `DerEnd(V) → CDerEnd(W_V)`, and `I`
//! as the kernel of a representation on `M₀ ⊕ M₁/N ⊕ M₂`.
//!
//! Elements of `V ⊗ V̄` are 2×2 complex matrices `X[i][j]`, the coefficient of
//! `e_i ē_j` for the standard basis `e₁, e₂` of `V`.

use crate::clifford::{grade, pos, MultiVector};
use crate::field::{q, qf, Field, Q};
use crate::frames::{CDer, NGEN};
use crate::glaoid::{lidx, Ideal, LDIM};
use crate::linalg::{kernel, Mat, Subspace};
use crate::scalar::CQ;

pub type C2 = [[CQ; 2]; 2];

fn cq(re: i64, im: i64) -> CQ {
    CQ::new(q(re), q(im))
}

fn c2(m: [[(i64, i64); 2]; 2]) -> C2 {
    m.map(|r| r.map(|(a, b)| cq(a, b)))
}

fn c2_half(m: [[(i64, i64); 2]; 2]) -> C2 {
    c2(m).map(|r| r.map(|v| v.scale(&qf(1, 2))))
}

fn c2_mul(a: &C2, b: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..2).fold(CQ::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())))
}

fn c2_adjoint(a: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].conj()))
}

fn c2_det(a: &C2) -> CQ {
    a[0][0].clone() * a[1][1].clone() - a[0][1].clone() * a[1][0].clone()
}

/// A basis `(v, w)` of `V`, stored as the columns of a 2×2 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorModule {
    pub basis: C2,
}

impl SpinorModule {
    pub fn standard() -> Self {
        SpinorModule { basis: c2([[(1, 0), (0, 0)], [(0, 0), (1, 0)]]) }
    }

    pub fn new(basis: C2) -> Option<Self> {
        if c2_det(&basis).is_zero() {
            None
        } else {
            Some(SpinorModule { basis })
        }
    }

    fn col(&self, k: usize) -> [CQ; 2] {
        [self.basis[0][k].clone(), self.basis[1][k].clone()]
    }

    /// The frame `θ₀ = vv̄+ww̄, θ₁ = vw̄+wv̄, θ₂ = iwv̄−ivw̄, θ₃ = vv̄−ww̄`.
    pub fn frame(&self) -> [C2; 4] {
        let (v, w) = (self.col(0), self.col(1));
        let outer = |a: &[CQ; 2], b: &[CQ; 2]| -> C2 { std::array::from_fn(|i| std::array::from_fn(|j| a[i].clone() * b[j].conj())) };
        let (vv, ww, vw, wv) = (outer(&v, &v), outer(&w, &w), outer(&v, &w), outer(&w, &v));
        let comb = |terms: &[(&C2, CQ)]| -> C2 {
            std::array::from_fn(|i| std::array::from_fn(|j| terms.iter().fold(CQ::zero(), |acc, (m, c)| acc + m[i][j].clone() * c.clone())))
        };
        [
            comb(&[(&vv, cq(1, 0)), (&ww, cq(1, 0))]),
            comb(&[(&vw, cq(1, 0)), (&wv, cq(1, 0))]),
            comb(&[(&wv, cq(0, 1)), (&vw, cq(0, -1))]),
            comb(&[(&vv, cq(1, 0)), (&ww, cq(-1, 0))]),
        ]
    }

    /// Gram matrix of [`SpinorModule::frame`] under [`pairing`].
    pub fn gram(&self) -> Vec<Vec<CQ>> {
        let f = self.frame();
        (0..4).map(|a| (0..4).map(|b| pairing(&f[a], &f[b])).collect()).collect()
    }

    /// `Λ` with `θ'_μ = Σ_ν Λ[ν][μ] θ_ν`, `θ` the standard frame.
    pub fn lorentz_matrix(&self) -> Option<Vec<Vec<Q>>> {
        let f = self.frame();
        let mut out = vec![vec![q(0); 4]; 4];
        for (mu, x) in f.iter().enumerate() {
            let coords = hermitian_coords(x)?;
            for nu in 0..4 {
                out[nu][mu] = coords[nu].clone();
            }
        }
        Some(out)
    }
}

/// The symmetric pairing `S²(V⊗V̄) → ∧²V ⊗ ∧²V̄ ≅ C`, identifying
/// `(e₁∧e₂)⊗(ē₁∧ē₂)` with `−½`, so that the standard frame is orthonormal
/// with signature `(−,+,+,+)`.
pub fn pairing(x: &C2, y: &C2) -> CQ {
    let cross = x[0][0].clone() * y[1][1].clone() + x[1][1].clone() * y[0][0].clone() - x[0][1].clone() * y[1][0].clone() - x[1][0].clone() * y[0][1].clone();
    cross.scale(&qf(-1, 2))
}

/// Real coordinates of `x` in the standard frame, if `x ∈ W_V`.
pub fn hermitian_coords(x: &C2) -> Option<[Q; 4]> {
    if *x != c2_adjoint(x) {
        return None;
    }
    let h = qf(1, 2);
    Some([
        (x[0][0].re.clone() + x[1][1].re.clone()) * h.clone(),
        x[1][0].re.clone(),
        x[1][0].im.clone(),
        (x[0][0].re.clone() - x[1][1].re.clone()) * h,
    ])
}

/// The seven named endomorphisms of `V`, with the `CDer` coordinate each maps to.
pub fn named_sigmas() -> Vec<(&'static str, usize, C2)> {
    vec![
        ("σ0", 4, c2_half([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])),
        ("σ1", 5, c2_half([[(0, 0), (1, 0)], [(1, 0), (0, 0)]])),
        ("σ2", 6, c2_half([[(0, 0), (0, -1)], [(0, 1), (0, 0)]])),
        ("σ3", 7, c2_half([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]])),
        ("σ23", 8, c2_half([[(0, 0), (0, 1)], [(0, 1), (0, 0)]])),
        ("σ31", 9, c2_half([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]])),
        ("σ12", 10, c2_half([[(0, 1), (0, 0)], [(0, 0), (0, -1)]])),
    ]
}

/// Action of `a ∈ End(V)` on `X ∈ V⊗V̄`: `δx⊗y + x⊗δ'y`, i.e. `AX + XA†`.
pub fn act_on_w(a: &C2, x: &C2) -> C2 {
    let l = c2_mul(a, x);
    let r = c2_mul(x, &c2_adjoint(a));
    std::array::from_fn(|i| std::array::from_fn(|j| l[i][j].clone() + r[i][j].clone()))
}

/// The 4×4 real matrix of `a` on the standard frame, `M[j][i]` the
/// coefficient of `θ_j` in `δ(θ_i)`.
pub fn frame_matrix(a: &C2) -> Vec<Vec<Q>> {
    let f = SpinorModule::standard().frame();
    let mut m = vec![vec![q(0); 4]; 4];
    for i in 0..4 {
        let c = hermitian_coords(&act_on_w(a, &f[i])).expect("action preserves W_V");
        for j in 0..4 {
            m[j][i] = c[j].clone();
        }
    }
    m
}

/// `DerEnd(V) → CDerEnd(W_V)` at a constant fiber.
pub fn derend_v_morphism(vector_field: &[Q; 4], a: &C2) -> CDer<Q> {
    CDer::from_matrix(vector_field, &frame_matrix(a)).expect("image of DerEnd(V) is conformal")
}

/// Real basis of `End_C(V)`: `E_ij` then `i·E_ij`.
pub fn endo_basis() -> Vec<C2> {
    let mut out = Vec::new();
    for im in [false, true] {
        for i in 0..2 {
            for j in 0..2 {
                let mut m = c2([[(0, 0); 2]; 2]);
                m[i][j] = if im { cq(0, 1) } else { cq(1, 0) };
                out.push(m);
            }
        }
    }
    out
}

/// Generators of `DerEnd(V)` at a constant fiber: 4 vector fields then 8 endomorphisms.
pub const NV: usize = 12;

fn gen_endo(g: usize) -> Option<C2> {
    (g >= 4).then(|| endo_basis()[g - 4].clone())
}

/// Coordinates of `u_ij = e_i ē_j` in the frame `θ`, complexified.
fn u_in_theta(i: usize, j: usize) -> [CQ; 4] {
    let h = qf(1, 2);
    let z = CQ::zero();
    match (i, j) {
        (0, 0) => [CQ::real(h.clone()), z.clone(), z.clone(), CQ::real(h)],
        (1, 1) => [CQ::real(h.clone()), z.clone(), z.clone(), CQ::real(-h)],
        (0, 1) => [z.clone(), CQ::real(h.clone()), CQ::new(q(0), h), z],
        _ => [z.clone(), CQ::real(h.clone()), CQ::new(q(0), -h), z],
    }
}

fn u_vector(i: usize, j: usize) -> MultiVector<CQ> {
    MultiVector::vector(&u_in_theta(i, j))
}

/// `∧W_C ⊗ V` as 32 complex coordinates: `pos(S)*2 + i`.
fn m1_index(mask: u8, i: usize) -> usize {
    pos(mask) * 2 + i
}

/// Generators of `N² = span{(s ē₁ ∧ s ē₂) ⊗ s}`, by polarizing the cubic in `s`.
pub fn n2_generators() -> Vec<Vec<CQ>> {
    let mut out = Vec::new();
    // s = a e₁ + b e₂ with (a, b) ∈ {(1,0),(0,1),(1,1),(1,−1)} spans the cubics
    for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
        let s = [cq(a, 0), cq(b, 0)];
        let sx = |j: usize| {
            let mut mv = MultiVector::<CQ>::zero();
            for (i, si) in s.iter().enumerate() {
                mv = mv + u_vector(i, j).scale(si);
            }
            mv
        };
        let two = sx(0).wedge(&sx(1));
        let mut v = vec![CQ::zero(); 32];
        for (mask, c) in two.terms() {
            for (i, si) in s.iter().enumerate() {
                v[m1_index(mask, i)] = v[m1_index(mask, i)].clone() + c.clone() * si.clone();
            }
        }
        out.push(v);
    }
    out
}

/// `N = (∧W)·N²` as a complex subspace of `∧W_C ⊗ V`.
pub fn n_submodule() -> Subspace<CQ> {
    let mut vecs = Vec::new();
    for g in n2_generators() {
        for r in 0..16u8 {
            vecs.push(wedge_left(r, &g));
        }
    }
    Subspace::span(vecs, 32)
}

fn wedge_left(r: u8, v: &[CQ]) -> Vec<CQ> {
    let mut out = vec![CQ::zero(); 32];
    for mask in 0..16u8 {
        if r & mask != 0 {
            continue;
        }
        let sign = crate::clifford::wedge_sign(r, mask);
        for i in 0..2 {
            let c = &v[m1_index(mask, i)];
            if c.is_zero() {
                continue;
            }
            let t = m1_index(r | mask, i);
            out[t] = if sign > 0 { out[t].clone() + c.clone() } else { out[t].clone() - c.clone() };
        }
    }
    out
}

/// Action of the degree-0 generator `a ∈ End(V)` on `∧W_C ⊗ V`: on the
/// `∧W` factor through its frame matrix, on `V` directly.
pub fn act_m1(a: &C2, v: &[CQ]) -> Vec<CQ> {
    let m = frame_matrix(a);
    let mc: Vec<Vec<CQ>> = m.iter().map(|r| r.iter().map(|x| CQ::real(x.clone())).collect()).collect();
    let mut out = vec![CQ::zero(); 32];
    for mask in 0..16u8 {
        for i in 0..2 {
            let c = &v[m1_index(mask, i)];
            if c.is_zero() {
                continue;
            }
            for (t, coef) in crate::frames::lambda_blade(&mc, mask).terms() {
                let k = m1_index(t, i);
                out[k] = out[k].clone() + coef.clone() * c.clone();
            }
            for j in 0..2 {
                let k = m1_index(mask, j);
                out[k] = out[k].clone() + a[j][i].clone() * c.clone();
            }
        }
    }
    out
}

/// Whether `N` is invariant under the 12 generators of `DerEnd(V)`.
/// Vector fields act trivially on constant sections.
pub fn n_is_invariant() -> bool {
    let n = n_submodule();
    endo_basis().iter().all(|a| n.basis.iter().all(|b| n.contains(&act_m1(a, b))))
}

/// Row offset of the `M₁/N` block in [`representation_matrix`].
pub const M1_OFFSET: usize = 64 + 64 + 32;

/// `L_V` in degree `k` has real basis `θ_S ⊗ g`, `|S| = k`, `g < 12`.
pub fn lv_basis(k: usize) -> Vec<(u8, usize)> {
    (0..16u8).filter(|m| grade(*m) == k).flat_map(|m| (0..NV).map(move |g| (m, g))).collect()
}

/// The real-linear representation map `L_V^k → DerEnd(M₀ ⊕ M₁/N ⊕ M₂)` at a
/// constant fiber, as a matrix with one column per basis element.
pub fn representation_matrix(k: usize, n: &Subspace<CQ>) -> Mat<Q> {
    let basis = lv_basis(k);
    let cols: Vec<Vec<Q>> = basis.iter().map(|&(mask, g)| representation_column(mask, g, n)).collect();
    let rows = cols[0].len();
    (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

fn push_c(out: &mut Vec<Q>, v: &CQ) {
    out.push(v.re.clone());
    out.push(v.im.clone());
}

fn representation_column(mask: u8, g: usize, n: &Subspace<CQ>) -> Vec<Q> {
    let mut out = Vec::new();
    // anchor on functions
    for nu in 0..4 {
        for s in 0..16u8 {
            out.push(if g == nu && s == mask { q(1) } else { q(0) });
        }
    }
    let a = gen_endo(g);
    // M₀: action on the generators θ_ν of ∧W
    let m = a.as_ref().map(frame_matrix).unwrap_or_else(|| vec![vec![q(0); 4]; 4]);
    for nu in 0..4u8 {
        let img = MultiVector::<Q>::blade(mask).wedge(&crate::frames::lambda_blade(&m, 1 << nu));
        for s in 0..16u8 {
            out.push(img.get(s).clone());
        }
    }
    // M₂: trace on ∧²V
    let zero = CQ::zero();
    let tr = a.as_ref().map(|a| a[0][0].clone() + a[1][1].clone()).unwrap_or_else(CQ::zero);
    for s in 0..16u8 {
        push_c(&mut out, if s == mask { &tr } else { &zero });
    }
    // M₁/N: images of 1⊗e_i, reduced mod N
    for i in 0..2 {
        let mut v = vec![CQ::zero(); 32];
        if let Some(a) = &a {
            for j in 0..2 {
                v[m1_index(mask, j)] = a[j][i].clone();
            }
        }
        for c in n.reduce(&v) {
            push_c(&mut out, &c);
        }
    }
    out
}

/// Image of `θ_S ⊗ g` in `L`.
pub fn to_l(mask: u8, g: usize) -> Vec<Q> {
    let mut out = vec![q(0); LDIM];
    if g < 4 {
        out[lidx(mask, g)] = q(1);
    } else {
        let d = derend_v_morphism(&[q(0), q(0), q(0), q(0)], &endo_basis()[g - 4]);
        for h in 4..NGEN {
            out[lidx(mask, h)] = d.c[h].clone();
        }
    }
    out
}

/// The kernel `I_V` in each degree, mapped into `L`.
pub fn ideal_via_representation() -> Vec<Subspace<Q>> {
    let n = n_submodule();
    (0..=4)
        .map(|k| {
            let basis = lv_basis(k);
            let rep = representation_matrix(k, &n);
            let ker = kernel(rep, basis.len());
            let imgs: Vec<Vec<Q>> = ker
                .iter()
                .map(|v| {
                    let mut out = vec![q(0); LDIM];
                    for (c, &(mask, g)) in v.iter().zip(&basis) {
                        if c.is_zero() {
                            continue;
                        }
                        for (o, x) in out.iter_mut().zip(to_l(mask, g)) {
                            *o = o.clone() + c.clone() * x;
                        }
                    }
                    out
                })
                .collect();
            Subspace::span(imgs, LDIM)
        })
        .collect()
}

/// Per-degree comparison with `I`.
pub fn matches_ideal(ideal: &Ideal) -> (Vec<usize>, bool) {
    let via = ideal_via_representation();
    let ranks = via.iter().map(|s| s.dim()).collect();
    let ok = via.iter().zip(&ideal.parts).all(|(a, b)| a.equals(b));
    (ranks, ok)
}

#[cfg(test)]
mod tests;
