//! The ideal `I ⊂ L`, three ways of building its degree-2 part, saturation,
//! and reduction to the quotient `E = L/I`.

use crate::clifford::{grade, MultiVector};
use crate::field::{q, DiffRing, Field, Q};
use crate::frames::{isotypic_decompose, IsotypicLabel, CDer, SO_W};
use crate::linalg::{kernel, Subspace};
use crate::scalar::Complex;

use super::element::{anchor_matrix, bracket_const, degree_coords, lsplit, LElement, LDIM};
use super::GlaoidError;

/// `u_a = θ₀θ_a + i θ_bθ_c` for cyclic `(a, b, c)`, as (real, imaginary) parts.
fn u_vec(a: usize) -> (MultiVector<Q>, MultiVector<Q>) {
    let (b, c) = [(2, 3), (3, 1), (1, 2)][a - 1];
    let th = MultiVector::<Q>::theta;
    (th(0).wedge(&th(a)), th(b).wedge(&th(c)))
}

/// `v_a = σ_a + i σ_bc`, as generator indices of the real and imaginary parts.
fn v_gen(a: usize) -> (usize, usize) {
    (4 + a, 7 + a)
}

/// Rational basis of the complex symmetric traceless 3×3 matrices over `C`:
/// the five real ones below, each also multiplied by `i`.
pub fn symmetric_traceless_basis() -> Vec<[[i64; 3]; 3]> {
    vec![
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    ]
}

/// `Re[uᵀ S v]` for `S = s` (when `imaginary` is false) or `S = i·s`.
pub fn mi2_element(s: &[[i64; 3]; 3], imaginary: bool) -> LElement<Q> {
    let mut acc: Complex<LElement<Q>> = Complex { re: LElement::zero(), im: LElement::zero() };
    for a in 1..=3 {
        for b in 1..=3 {
            let sab = s[a - 1][b - 1];
            if sab == 0 {
                continue;
            }
            let (ur, ui) = u_vec(a);
            let (vr, vi) = v_gen(b);
            let (dr, di) = (CDer::<Q>::generator(vr), CDer::<Q>::generator(vi));
            let k = q(sab);
            let re = LElement::tensor(&ur, &dr) - LElement::tensor(&ui, &di);
            let im = LElement::tensor(&ur, &di) + LElement::tensor(&ui, &dr);
            acc.re = acc.re.clone() + re.scale(&k);
            acc.im = acc.im.clone() + im.scale(&k);
        }
    }
    if imaginary {
        -acc.im
    } else {
        acc.re
    }
}

/// The ten elements spanning `I²` given by the explicit formula.
pub fn ideal_basis_explicit() -> Vec<LElement<Q>> {
    let mut out = Vec::new();
    for s in symmetric_traceless_basis() {
        out.push(mi2_element(&s, false));
        out.push(mi2_element(&s, true));
    }
    out
}

/// `m² = ker(ρ) ∩ L²`, as flat vectors.
pub fn anchor_kernel(k: usize) -> Vec<Vec<Q>> {
    let cols = degree_coords(k);
    let a = anchor_matrix(&cols);
    kernel(a, cols.len())
        .into_iter()
        .map(|v| {
            let mut full = vec![q(0); LDIM];
            for (c, &i) in cols.iter().enumerate() {
                full[i] = v[c].clone();
            }
            full
        })
        .collect()
}

fn sigma_elt(g: usize) -> Vec<Q> {
    LElement::<Q>::basis(0, g).c
}

/// Matrices of `ad(1⊗σ)` for the `so(W)` basis on an invariant subspace,
/// in the coordinates given by the subspace's echelon basis.
pub fn so_w_action(space: &Subspace<Q>) -> Result<Vec<Vec<Vec<Q>>>, GlaoidError> {
    let n = space.dim();
    let mut reps = Vec::new();
    for g in SO_W {
        let s = sigma_elt(g);
        let mut m = vec![vec![q(0); n]; n];
        for (c, b) in space.basis.iter().enumerate() {
            let img = bracket_const(&s, b);
            let coords = space
                .coordinates(&img)
                .ok_or_else(|| GlaoidError::NotInvariant(format!("ad(σ) does not preserve the subspace (generator {g})")))?;
            for r in 0..n {
                m[r][c] = coords[r].clone();
            }
        }
        reps.push(m);
    }
    Ok(reps)
}

/// Extract an isotypic component of `m²` by exact decomposition.
pub fn ideal_basis_isotypic_with(label: IsotypicLabel) -> Result<Vec<Vec<Q>>, GlaoidError> {
    let m2 = Subspace::span(anchor_kernel(2), LDIM);
    let reps = so_w_action(&m2)?;
    let comps = isotypic_decompose(&reps, false)?;
    let comp = comps
        .into_iter()
        .find(|c| c.label == label)
        .ok_or_else(|| GlaoidError::ComponentNotFound(label.to_string()))?;
    Ok(comp
        .basis
        .iter()
        .map(|coords| {
            let mut v = vec![q(0); LDIM];
            for (cf, b) in coords.iter().zip(&m2.basis) {
                if Field::is_zero(cf) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x += cf * y;
                }
            }
            v
        })
        .collect())
}

/// The `(2,0)⊕(0,2)` component of `m²`.
pub fn ideal_basis_isotypic() -> Result<Vec<Vec<Q>>, GlaoidError> {
    ideal_basis_isotypic_with(IsotypicLabel::new(4, 0))
}

/// A graded subspace of `L` closed under multiplication by `∧W`, with
/// reduction to a canonical complement.
#[derive(Clone, Debug)]
pub struct Ideal {
    /// Degree parts, indexed by degree 0..=4.
    pub parts: Vec<Subspace<Q>>,
    all: Subspace<Q>,
}

impl Ideal {
    /// Saturate a degree-2 generating set: `I³ = W∧I²`, `I⁴ = W∧I³`.
    pub fn saturate(basis2: &[Vec<Q>]) -> Ideal {
        let empty = || Subspace::span(Vec::new(), LDIM);
        let i2 = Subspace::span(basis2.to_vec(), LDIM);
        let mul_w = |s: &Subspace<Q>| {
            let mut vecs = Vec::new();
            for i in 0..4 {
                let th = MultiVector::<Q>::theta(i);
                for b in &s.basis {
                    vecs.push(LElement::ext_mul(&th, &LElement::from_vec(b.clone())).c);
                }
            }
            Subspace::span(vecs, LDIM)
        };
        let i3 = mul_w(&i2);
        let i4 = mul_w(&i3);
        let parts = vec![empty(), empty(), i2, i3, i4];
        let all_vecs: Vec<Vec<Q>> = parts.iter().flat_map(|p| p.basis.clone()).collect();
        let all = Subspace::span(all_vecs, LDIM);
        Ideal { parts, all }
    }

    /// The ideal generated by the explicit degree-2 basis.
    pub fn standard() -> Ideal {
        let b: Vec<Vec<Q>> = ideal_basis_explicit().into_iter().map(|x| x.c).collect();
        Ideal::saturate(&b)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim()).collect()
    }

    pub fn space(&self) -> &Subspace<Q> {
        &self.all
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.all.contains(x)
    }

    /// Canonical representative modulo `I`; zero on the pivot coordinates.
    pub fn reduce<T: Field>(&self, x: &LElement<T>) -> LElement<T> {
        let mut r = x.c.clone();
        for (row, &p) in self.all.basis.iter().zip(&self.all.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (j, v) in row.iter().enumerate().skip(p) {
                if !Field::is_zero(v) {
                    r[j] = r[j].clone() - f.clone() * T::from_q(v);
                }
            }
        }
        LElement { c: r }
    }

    /// Flat coordinates spanning the canonical complement (the quotient `E`).
    pub fn complement(&self) -> Vec<usize> {
        self.all.complement_columns()
    }

    /// Complement coordinates of degree `k`.
    pub fn complement_degree(&self, k: usize) -> Vec<usize> {
        self.complement().into_iter().filter(|&i| grade(lsplit(i).0) == k).collect()
    }

    /// Ranks of `E = L/I` per degree.
    pub fn quotient_ranks(&self) -> Vec<usize> {
        (0..=4).map(|k| self.complement_degree(k).len()).collect()
    }

    /// Coordinates in `Eᵏ` (complement order) of the reduction of `x`.
    pub fn e_coords<T: Field>(&self, k: usize, x: &LElement<T>) -> Vec<T> {
        let r = self.reduce(x);
        self.complement_degree(k).into_iter().map(|i| r.c[i].clone()).collect()
    }

    /// The canonical lift of `Eᵏ` coordinates to `Lᵏ`.
    pub fn e_lift<T: Field>(&self, k: usize, v: &[T]) -> LElement<T> {
        let mut x = LElement::zero();
        for (i, c) in self.complement_degree(k).into_iter().zip(v) {
            x.c[i] = c.clone();
        }
        x
    }

    /// Isotypic labels of each nonzero degree part under `ad(so(W))`.
    pub fn labels(&self) -> Result<Vec<(usize, Vec<IsotypicLabel>)>, GlaoidError> {
        let mut out = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            if part.dim() == 0 {
                continue;
            }
            let reps = so_w_action(part)?;
            let comps = isotypic_decompose(&reps, false)?;
            out.push((k, comps.into_iter().map(|c| c.label).collect()));
        }
        Ok(out)
    }
}

/// `[x, x]` reduced modulo `I`; zero iff `x` is Maurer-Cartan in `E`.
pub fn mc_defect<T: DiffRing>(x: &LElement<T>, ideal: &Ideal) -> Result<LElement<T>, GlaoidError> {
    if x.grades().iter().any(|&g| g != 1) {
        return Err(GlaoidError::NotGradeOne);
    }
    Ok(ideal.reduce(&x.bracket(x)))
}

/// `Σ_μ θ_μ ⊗ ∂̂_μ`.
pub fn x_mink<T: Field>() -> LElement<T> {
    let mut x = LElement::zero();
    for mu in 0..4 {
        x = x + LElement::basis(1 << mu, mu);
    }
    x
}
