//! Symbols of the gauge-fixed operators `L^k(u) = B^k(−, [x, u])` and toy
//! solvers for symmetric hyperbolic systems.

pub mod solver;
pub mod scenarios;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{q, qf, DiffRing, Field, Q};
use crate::gauge::{GaugeBuilder, GaugeData};
use crate::glaoid::{lidx, LElement};
use crate::linalg::{det, leading_principal_minors, Mat, Subspace};
use crate::scalar::{Poly, Scalar};

pub use solver::*;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperbolicError {
    #[error("x is degenerate: its vector field block is not invertible")]
    Degenerate,
    #[error("degree {0} is out of range")]
    BadDegree(usize),
    #[error("CFL violation: dt·max|λ|/dx = {0} exceeds {1}")]
    CflViolation(f64, f64),
    #[error("A⁰ lost positivity: smallest eigenvalue {0} below floor {1}")]
    PositivityLost(f64, f64),
    #[error("A⁰ is not positive definite")]
    NotPositive,
    #[error("bad dimension {0}")]
    BadDimension(usize),
}

/// `e[μ][ν]`: the coefficient of `θ_μ ⊗ ∂̂_ν` in `x`.
pub fn frame_of<T: Field>(x: &LElement<T>) -> Vec<Vec<T>> {
    (0..4).map(|mu| (0..4).map(|nu| x.c[lidx(1 << mu, nu)].clone()).collect()).collect()
}

/// `a(x^ν) = Σ_μ e[μ][ν] θ_μ`, the anchor of `x` applied to coordinate `ν`.
pub fn anchor_vectors<T: Field>(x: &LElement<T>) -> [[T; 4]; 4] {
    let e = frame_of(x);
    std::array::from_fn(|nu| std::array::from_fn(|mu| e[mu][nu].clone()))
}

pub fn is_nondegenerate<T: Field>(x: &LElement<T>) -> bool {
    !det(&frame_of(x)).is_zero()
}

/// Principal symbol `A^μ` and zeroth-order part `C` of `L^k` on `E_G^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSystem<T> {
    pub degree: usize,
    pub a: [Mat<T>; 4],
    pub c: Mat<T>,
    /// Basis of `E_G^k` in `Eᵏ` coordinates.
    pub basis: Vec<Vec<Q>>,
}

impl<T: Field> SymbolSystem<T> {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.a.iter().all(|m| (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i])))
    }

    pub fn a0_minors(&self) -> Vec<T> {
        leading_principal_minors(&self.a[0])
    }
}

impl SymbolSystem<Q> {
    pub fn a0_positive(&self) -> bool {
        self.a0_minors().iter().all(|d| *d > q(0))
    }

    pub fn to_f64(&self) -> SymbolF64 {
        let conv = |m: &Mat<Q>| m.iter().map(|r| r.iter().map(crate::field::q_to_f64).collect()).collect();
        SymbolF64 { a: std::array::from_fn(|i| conv(&self.a[i])), c: conv(&self.c) }
    }
}

/// `B^k(e_m, θ_μ ∧ e_n)` on `E_G^k` for each `μ`.
pub fn theta_blocks(gb: &GaugeBuilder, g: &GaugeData, k: usize) -> [Mat<Q>; 4] {
    std::array::from_fn(|mu| {
        let mut w = [q(0), q(0), q(0), q(0)];
        w[mu] = q(1);
        gb.bk_w(g, k, &w)
    })
}

/// Assemble `A^ν = B^k(−, a(x^ν) ∧ −)` and `C = B^k(−, [x, −])` on constants.
pub fn assemble_symbol<T: DiffRing>(
    gb: &GaugeBuilder,
    g: &GaugeData,
    x: &LElement<T>,
    k: usize,
) -> Result<SymbolSystem<T>, HyperbolicError> {
    if k > 3 {
        return Err(HyperbolicError::BadDegree(k));
    }
    if !is_nondegenerate(x) {
        return Err(HyperbolicError::Degenerate);
    }
    let n = g.eg[k].len();
    let blocks = theta_blocks(gb, g, k);
    let av = anchor_vectors(x);
    let a = std::array::from_fn(|nu| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = T::zero();
                        for mu in 0..4 {
                            if !blocks[mu][i][j].is_zero() && !av[nu][mu].is_zero() {
                                acc = acc + av[nu][mu].scale_q(&blocks[mu][i][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    });
    let cols: Vec<Vec<T>> = g.eg[k].iter().map(|u| dx_coords(gb, x, k, &u.iter().map(T::from_q).collect::<Vec<_>>())).collect();
    let c = (0..n).map(|i| (0..n).map(|j| pair_bk(g, k, i, &cols[j])).collect()).collect();
    Ok(SymbolSystem { degree: k, a, c, basis: g.eg[k].clone() })
}

/// `[x, u]` for `u ∈ Eᵏ`, in `E^{k+1}` coordinates.
pub fn dx_coords<T: DiffRing>(gb: &GaugeBuilder, x: &LElement<T>, k: usize, u: &[T]) -> Vec<T> {
    let lu = gb.ideal.e_lift(k, u);
    gb.ideal.e_coords(k + 1, &x.bracket(&lu))
}

/// `B^k(e_i, y)` for `y ∈ E^{k+1}` with generic coefficients.
pub fn pair_bk<T: Field>(g: &GaugeData, k: usize, i: usize, y: &[T]) -> T {
    let mut acc = T::zero();
    for (b, v) in g.bk[k][i].iter().zip(y) {
        if !b.is_zero() && !v.is_zero() {
            acc = acc + v.scale_q(b);
        }
    }
    acc
}

/// `L^k(u)` as a covector on `E_G^k`, for `u = Σ u_n e_n` with function
/// coefficients.
pub fn apply_l<T: DiffRing>(gb: &GaugeBuilder, g: &GaugeData, x: &LElement<T>, k: usize, u: &[T]) -> Vec<T> {
    let ncoord = gb.ideal.complement_degree(k).len();
    let mut ue = vec![T::zero(); ncoord];
    for (un, e) in u.iter().zip(&g.eg[k]) {
        for (o, v) in ue.iter_mut().zip(e) {
            if !v.is_zero() {
                *o = o.clone() + un.scale_q(v);
            }
        }
    }
    let dx = dx_coords(gb, x, k, &ue);
    (0..g.eg[k].len()).map(|i| pair_bk(g, k, i, &dx)).collect()
}

/// The symbol applied to `u`: `Σ_ν A^ν ∂_ν u + C u`.
pub fn apply_symbol<T: DiffRing>(sys: &SymbolSystem<T>, u: &[T]) -> Vec<T> {
    let n = sys.size();
    (0..n)
        .map(|i| {
            let mut acc = T::zero();
            for j in 0..n {
                if u[j].is_zero() {
                    continue;
                }
                for nu in 0..4 {
                    if !sys.a[nu][i][j].is_zero() {
                        acc = acc + sys.a[nu][i][j].clone() * u[j].partial(nu);
                    }
                }
                if !sys.c[i][j].is_zero() {
                    acc = acc + sys.c[i][j].clone() * u[j].clone();
                }
            }
            acc
        })
        .collect()
}

/// `K`: `E_G^k → E^{k+1}/E_G^{k+1}` on constant basis vectors, in the
/// coordinates of a complement of `E_G^{k+1}`; returns the `|complement| × n`
/// matrix and the complement columns.
pub fn contraction_matrix(gb: &GaugeBuilder, g: &GaugeData, x: &LElement<Q>, k: usize) -> (Mat<Q>, Vec<usize>) {
    let n1 = gb.ideal.complement_degree(k + 1).len();
    let eg1 = Subspace::span(g.eg[k + 1].clone(), n1);
    let comp = eg1.complement_columns();
    let cols: Vec<Vec<Q>> = g.eg[k]
        .iter()
        .map(|u| {
            let r = eg1.reduce(&dx_coords(gb, x, k, u));
            comp.iter().map(|&c| r[c].clone()).collect()
        })
        .collect();
    let m = (0..comp.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    (m, comp)
}

/// Symbol identity `K = p ∘ d ∘ incl` on `f·e_n`: the reduction of
/// `[x, f e_n]` modulo `E_G^{k+1}`, paired with `B^k`, equals the symbol
/// applied to `f e_n`.
pub fn check_symbol_identity(gb: &GaugeBuilder, g: &GaugeData, sys: &SymbolSystem<Scalar>, x: &LElement<Scalar>, f: &Scalar, n: usize) -> bool {
    let k = sys.degree;
    let mut u = vec![Scalar::zero(); sys.size()];
    u[n] = f.clone();
    let direct = apply_l(gb, g, x, k, &u);
    // Pairing kills E_G^{k+1}, so reduce first and compare.
    let n1 = gb.ideal.complement_degree(k + 1).len();
    let eg1 = Subspace::span(g.eg[k + 1].clone(), n1);
    let ue: Vec<Scalar> = {
        let ncoord = gb.ideal.complement_degree(k).len();
        let mut v = vec![Scalar::zero(); ncoord];
        for (o, b) in v.iter_mut().zip(&g.eg[k][n]) {
            *o = f.scale_q(b);
        }
        v
    };
    let dx = dx_coords(gb, x, k, &ue);
    let reduced = reduce_generic(&eg1, &dx);
    let via_quotient: Vec<Scalar> = (0..sys.size()).map(|i| pair_bk(g, k, i, &reduced)).collect();
    direct == apply_symbol(sys, &u) && via_quotient == direct
}

fn reduce_generic<T: Field>(s: &Subspace<Q>, v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    for (row, &p) in s.basis.iter().zip(&s.pivots) {
        let c = out[p].clone();
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            if !Field::is_zero(r) {
                *o = o.clone() - c.scale_q(r);
            }
        }
    }
    out
}

/// Random polynomial in `x0..x3` with small integer coefficients, degree ≤ 2.
pub fn random_poly(rng: &mut ChaCha8Rng) -> Scalar {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut e = [0u16; 4];
        for _ in 0..rng.gen_range(0..=2) {
            e[rng.gen_range(0..4)] += 1;
        }
        p = &p + &Poly::monomial(e, q(rng.gen_range(-3..=3)));
    }
    Scalar::poly(p)
}

/// Seeded instances of the symbol identity at degree `k`.
pub fn symbol_identity_trials(gb: &GaugeBuilder, g: &GaugeData, x: &LElement<Scalar>, k: usize, trials: usize, seed: u64) -> Result<usize, HyperbolicError> {
    let sys = assemble_symbol(gb, g, x, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let f = random_poly(&mut rng);
        let n = rng.gen_range(0..sys.size());
        if check_symbol_identity(gb, g, &sys, x, &f, n) {
            passed += 1;
        }
    }
    Ok(passed)
}

/// Whether `w = Σ w_i θ_i` lies in `W₊`.
pub fn in_w_plus(w: &[Q; 4]) -> bool {
    let norm = &w[0] * &w[0] - &w[1] * &w[1] - &w[2] * &w[2] - &w[3] * &w[3];
    w[0] > q(0) && norm > q(0)
}

/// Direction samples: `0`, `±e_i`, and the eight cube corners scaled to
/// rational points of norm below one.
pub fn direction_samples() -> Vec<[Q; 3]> {
    let mut out = vec![[q(0), q(0), q(0)]];
    for i in 0..3 {
        for s in [1, -1] {
            let mut n = [q(0), q(0), q(0)];
            n[i] = q(s);
            out.push(n);
        }
    }
    // (4/7)²·3 = 48/49 ≤ 1
    for bits in 0..8 {
        out.push(std::array::from_fn(|i| if bits & (1 << i) != 0 { qf(-4, 7) } else { qf(4, 7) }));
    }
    out
}

/// Sample points of the coordinate domain.
pub fn domain_samples() -> Vec<[Q; 4]> {
    let vals = [q(-1), q(0), qf(1, 2), q(1)];
    let mut out = Vec::new();
    for a in &vals {
        for b in &vals {
            for c in &vals {
                for d in &vals {
                    out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                }
            }
        }
    }
    out
}

/// Time-coordinate scalings tried for the time function `t = λ x⁰`.
pub const TIME_SCALINGS: [i64; 4] = [1, 2, 4, 8];

/// Global hyperbolicity with coordinates `t = λx⁰`, `ξ_i = x^i`:
/// `a(t) + Σ n^i a(ξ_i) ∈ W₊` at every direction and domain sample, for
/// some `λ` in [`TIME_SCALINGS`].
pub fn check_global_hyperbolicity(x: &LElement<Scalar>) -> bool {
    let av = anchor_vectors(x);
    let points = domain_samples();
    let dirs = direction_samples();
    let mut values = Vec::new();
    for p in &points {
        let vals: Option<Vec<Vec<Q>>> = av.iter().map(|v| v.iter().map(|c| c.eval(p)).collect()).collect();
        match vals {
            Some(v) => values.push(v),
            None => return false,
        }
    }
    TIME_SCALINGS.iter().any(|&lambda| {
        values.iter().all(|v| {
            dirs.iter().all(|n| {
                let w: [Q; 4] = std::array::from_fn(|mu| {
                    let mut acc = &v[0][mu] * q(lambda);
                    for i in 0..3 {
                        acc += &n[i] * &v[i + 1][mu];
                    }
                    acc
                });
                in_w_plus(&w)
            })
        })
    })
}

#[cfg(test)]
mod tests;
