//! Gauges built from Hermitian forms: the map `⟨·⟩_#`, the odd forms `b_h`,
//! the invariant averaging projection, and the submodules `E_G` with the
//! pairings `B^k`.
//!
//! `E̸` is identified with `Cl ⊗ A` (144 coordinates, index `j·16 + monomial`
//! for `θ_U a_j`), where `A` is spanned by nine constant generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{character, clifford_sign, grade, pos, transpose_sign, GroupElt, MultiVector, BLADES};
use crate::field::{q, q_from_str, q_to_string, qf, Field, Q};
use crate::glaoid::{lsplit, Ideal, LElement, LDIM};
use crate::linalg::{integer_rows, inverse, kernel_q, leading_principal_minors, rank_q, solve, Mat, SparseRow, Subspace};
use crate::scalar::CQ;
use crate::slashed::{l_layer, Slashed, SlashedError};

pub const EDIM: usize = 144;
pub const NA: usize = 9;
pub const HDIM: usize = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaugeError {
    #[error("form is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("form is not positive definite at w = {w}: leading minor {index} is {minor}")]
    NotPositive { w: String, index: usize, minor: String },
    #[error("splitting failed: {0}")]
    SplittingFailed(String),
    #[error("bad Hermitian form input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Slashed(#[from] SlashedError),
}

/// `⟨x⟩_#` as a 2×2 complex matrix.
pub fn hash_map(x: &MultiVector<Q>) -> [[CQ; 2]; 2] {
    let z = || CQ::zero();
    let mut out = [[z(), z()], [z(), z()]];
    for (mask, c) in x.terms() {
        let m = hash_blade(mask);
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] = out[a][b].clone() + m[a][b].scale_q(c);
            }
        }
    }
    out
}

fn pauli(i: usize) -> [[CQ; 2]; 2] {
    let r = |v: i64| CQ::from_i64(v);
    let im = |v: i64| CQ::new(q(0), q(v));
    match i {
        0 => [[r(1), r(0)], [r(0), r(1)]],
        1 => [[r(0), r(1)], [r(1), r(0)]],
        2 => [[r(0), im(-1)], [im(1), r(0)]],
        _ => [[r(1), r(0)], [r(0), r(-1)]],
    }
}

fn hash_blade(mask: u8) -> [[CQ; 2]; 2] {
    let times = |m: [[CQ; 2]; 2], s: CQ| m.map(|row| row.map(|v| v * s.clone()));
    let mi = CQ::new(q(0), q(-1));
    match mask {
        0b0001 => pauli(0),
        0b0010 => pauli(1),
        0b0100 => pauli(2),
        0b1000 => pauli(3),
        0b1110 => times(pauli(0), mi),
        0b1101 => times(pauli(1), mi),
        // θ₀θ₃θ₁ = −θ₀θ₁θ₃
        0b1011 => times(pauli(2), -mi),
        0b0111 => times(pauli(3), mi),
        _ => [[CQ::zero(), CQ::zero()], [CQ::zero(), CQ::zero()]],
    }
}

/// An 18×18 Hermitian form on `C² ⊗ A`, index `α·9 + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermForm {
    pub m: Vec<Vec<CQ>>,
}

#[derive(Serialize, Deserialize)]
struct HermJson {
    re: Vec<Vec<String>>,
    im: Vec<Vec<String>>,
}

impl HermForm {
    pub fn identity() -> Self {
        let m = (0..HDIM).map(|i| (0..HDIM).map(|j| if i == j { CQ::one() } else { CQ::zero() }).collect()).collect();
        HermForm { m }
    }

    /// `MᴴM + 1` for a random small-integer complex `M`.
    pub fn random_positive(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Vec<CQ>> = (0..HDIM)
            .map(|_| (0..HDIM).map(|_| CQ::new(q(rng.gen_range(-2..=2)), q(rng.gen_range(-2..=2)))).collect())
            .collect();
        let mut m = vec![vec![CQ::zero(); HDIM]; HDIM];
        for i in 0..HDIM {
            for j in 0..HDIM {
                let mut acc = if i == j { CQ::one() } else { CQ::zero() };
                for k in 0..HDIM {
                    acc = acc + a[k][i].conj() * a[k][j].clone();
                }
                m[i][j] = acc;
            }
        }
        HermForm { m }
    }

    pub fn validate(&self) -> Result<(), GaugeError> {
        if self.m.len() != HDIM || self.m.iter().any(|r| r.len() != HDIM) {
            return Err(GaugeError::BadInput(format!("expected {HDIM}×{HDIM} matrix")));
        }
        for i in 0..HDIM {
            for j in 0..HDIM {
                if self.m[i][j] != self.m[j][i].conj() {
                    return Err(GaugeError::NotHermitian(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, GaugeError> {
        let j: HermJson = serde_json::from_str(s).map_err(|e| GaugeError::BadInput(e.to_string()))?;
        let parse = |t: &String| q_from_str(t).ok_or_else(|| GaugeError::BadInput(format!("not a rational: {t}")));
        let mut m = Vec::new();
        if j.re.len() != HDIM || j.im.len() != HDIM {
            return Err(GaugeError::BadInput(format!("expected {HDIM} rows")));
        }
        for (r, i) in j.re.iter().zip(&j.im) {
            if r.len() != HDIM || i.len() != HDIM {
                return Err(GaugeError::BadInput(format!("expected {HDIM} columns")));
            }
            let row: Result<Vec<CQ>, GaugeError> = r.iter().zip(i).map(|(a, b)| Ok(CQ::new(parse(a)?, parse(b)?))).collect();
            m.push(row?);
        }
        let h = HermForm { m };
        h.validate()?;
        Ok(h)
    }

    pub fn to_json(&self) -> String {
        let j = HermJson {
            re: self.m.iter().map(|r| r.iter().map(|z| q_to_string(&z.re)).collect()).collect(),
            im: self.m.iter().map(|r| r.iter().map(|z| q_to_string(&z.im)).collect()).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Positive definiteness by leading principal minors (real parts; the
    /// minors of a Hermitian matrix are real).
    pub fn is_positive_definite(&self) -> bool {
        leading_principal_minors(&self.m).iter().all(|d| Field::is_zero(&d.im) && d.re > q(0))
    }
}

/// Coordinate index of `θ_U a_j` in `E̸ ≅ Cl ⊗ A`.
pub fn eidx(j: usize, mask: u8) -> usize {
    j * 16 + pos(mask)
}

pub fn esplit(i: usize) -> (usize, u8) {
    (i / 16, BLADES[i % 16])
}

pub fn e_is_odd(i: usize) -> bool {
    grade(esplit(i).1) % 2 == 1
}

/// Clifford left multiplication by `θ_r` on `E̸` as (target index, sign).
pub fn cl_act(r: u8, i: usize) -> (usize, i64) {
    let (j, m) = esplit(i);
    (eidx(j, r ^ m), clifford_sign(r, m))
}

/// Matrix of left multiplication by `w = Σ w_μ θ_μ` on `E̸`.
pub fn w_matrix(w: &[Q; 4]) -> Mat<Q> {
    let mut m = vec![vec![q(0); EDIM]; EDIM];
    for (mu, wm) in w.iter().enumerate() {
        if Field::is_zero(wm) {
            continue;
        }
        for i in 0..EDIM {
            let (t, s) = cl_act(1 << mu, i);
            m[t][i] += wm * q(s);
        }
    }
    m
}

/// A symmetric bilinear form on `E̸` (144×144 Gram matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct OddForm {
    pub m: Mat<Q>,
}

impl OddForm {
    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = q(0);
        for (i, xi) in x.iter().enumerate() {
            if Field::is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !Field::is_zero(yj) && !Field::is_zero(&self.m[i][j]) {
                    acc += xi * yj * &self.m[i][j];
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        (0..EDIM).all(|i| (0..EDIM).all(|j| self.m[i][j] == self.m[j][i]))
    }

    /// Vanishes on (even, even) and (odd, odd).
    pub fn is_odd(&self) -> bool {
        (0..EDIM).all(|i| (0..EDIM).all(|j| e_is_odd(i) != e_is_odd(j) || Field::is_zero(&self.m[i][j])))
    }

    /// Gram matrix of `(x, y) ↦ b(x, w y)`.
    pub fn with_w(&self, w: &[Q; 4]) -> Mat<Q> {
        let wm = w_matrix(w);
        crate::linalg::mat_mul(&self.m, &wm, EDIM)
    }

    /// Condition (i) at `w`: `b(−, w−)` symmetric.
    pub fn w_symmetric(&self, w: &[Q; 4]) -> bool {
        let g = self.with_w(w);
        (0..EDIM).all(|i| (0..EDIM).all(|j| g[i][j] == g[j][i]))
    }

    /// Leading principal minors of `b(−, w−)`.
    pub fn w_minors(&self, w: &[Q; 4]) -> Vec<Q> {
        leading_principal_minors(&self.with_w(w))
    }
}

/// `⟨θ_U^T θ_V⟩_#` for all monomial pairs.
fn hash_table() -> Vec<Vec<[[CQ; 2]; 2]>> {
    BLADES
        .iter()
        .map(|&u| {
            BLADES
                .iter()
                .map(|&v| {
                    let s = transpose_sign(u) * clifford_sign(u, v);
                    let m = hash_blade(u ^ v);
                    m.map(|row| row.map(|z| z.scale_q(&q(s))))
                })
                .collect()
        })
        .collect()
}

/// `b_h(θ_U a_j, θ_V a_k) = Re Σ_{αβ} h[(α,j),(β,k)] ⟨θ_Uᵀ θ_V⟩_#[α][β]`.
pub fn build_b(h: &HermForm) -> Result<OddForm, GaugeError> {
    h.validate()?;
    let table = hash_table();
    let mut m = vec![vec![q(0); EDIM]; EDIM];
    for x in 0..EDIM {
        let (j, u) = esplit(x);
        for y in 0..EDIM {
            let (k, v) = esplit(y);
            let t = &table[pos(u)][pos(v)];
            let mut acc = CQ::zero();
            for a in 0..2 {
                for b in 0..2 {
                    if !t[a][b].is_zero() {
                        acc = acc + t[a][b].clone() * h.m[a * NA + j][b * NA + k].clone();
                    }
                }
            }
            m[x][y] = acc.re;
        }
    }
    Ok(OddForm { m })
}

/// Basis of the real vector space of 18×18 Hermitian forms (324 elements).
pub fn herm_basis() -> Vec<HermForm> {
    let mut out = Vec::new();
    let zero = || vec![vec![CQ::zero(); HDIM]; HDIM];
    for i in 0..HDIM {
        let mut m = zero();
        m[i][i] = CQ::one();
        out.push(HermForm { m });
        for j in i + 1..HDIM {
            let mut m = zero();
            m[i][j] = CQ::one();
            m[j][i] = CQ::one();
            out.push(HermForm { m });
            let mut m = zero();
            m[i][j] = CQ::new(q(0), q(1));
            m[j][i] = CQ::new(q(0), q(-1));
            out.push(HermForm { m });
        }
    }
    out
}

/// Rank of the linear map `h ↦ b_h` over `Q`.
pub fn b_map_rank() -> usize {
    let rows = herm_basis().into_iter().map(|h| {
        let b = build_b(&h).expect("basis forms are Hermitian");
        let mut row = SparseRow::new();
        for i in 0..EDIM {
            for j in 0..EDIM {
                if !Field::is_zero(&b.m[i][j]) {
                    row.insert(i * EDIM + j, b.m[i][j].clone());
                }
            }
        }
        row
    });
    crate::linalg::sparse_rank(rows)
}

/// `b(x, y) = (1/16) Σ_S χ₀(θ_S) b'(θ_S x, θ_S y)`.
pub fn average_project(b: &OddForm) -> OddForm {
    let mut m = vec![vec![q(0); EDIM]; EDIM];
    let w = qf(1, 16);
    for &s in &BLADES {
        let chi = character(0, GroupElt { sign: 1, mask: s });
        let act: Vec<(usize, i64)> = (0..EDIM).map(|i| cl_act(s, i)).collect();
        for x in 0..EDIM {
            let (tx, sx) = act[x];
            for y in 0..EDIM {
                let (ty, sy) = act[y];
                let v = &b.m[tx][ty];
                if Field::is_zero(v) {
                    continue;
                }
                m[x][y] += v * q(chi * sx * sy);
            }
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v *= &w;
        }
    }
    OddForm { m }
}

/// Indices of the even coordinates of `E̸`.
pub fn even_coords() -> Vec<usize> {
    (0..EDIM).filter(|&i| !e_is_odd(i)).collect()
}

/// Lift a form `b''` on `E̸^even` (72×72, symmetric) to the odd form with
/// `b'(x, y) = b'(y, x) = b''(x, θ₀ y)` for even `x` and odd `y`.
pub fn lift_even_form(b2: &Mat<Q>) -> OddForm {
    let even = even_coords();
    let index_of = |i: usize| even.iter().position(|&e| e == i).expect("even coordinate");
    let mut m = vec![vec![q(0); EDIM]; EDIM];
    for (a, &x) in even.iter().enumerate() {
        for y in (0..EDIM).filter(|&i| e_is_odd(i)) {
            let (t, s) = cl_act(1, y);
            let v = &b2[a][index_of(t)] * q(s);
            m[x][y] = v.clone();
            m[y][x] = v;
        }
    }
    OddForm { m }
}

/// Random symmetric positive definite `MᵀM + 1` on `E̸^even`.
pub fn random_even_form(seed: u64) -> Mat<Q> {
    let n = EDIM / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| if rng.gen_bool(0.1) { rng.gen_range(-2..=2) } else { 0 }).collect()).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: i64 = (0..n).map(|k| a[k][i] * a[k][j]).sum();
                    q(s + if i == j { 1 } else { 0 })
                })
                .collect()
        })
        .collect()
}

/// Fixed future-timelike witnesses, plus two seeded random ones.
pub fn sample_w_plus(seed: u64) -> Vec<[Q; 4]> {
    let mut out = vec![
        [q(1), q(0), q(0), q(0)],
        [qf(5, 4), qf(3, 4), q(0), q(0)],
        [qf(3, 2), qf(1, 2), qf(1, 2), qf(1, 2)],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 5 {
        let v: [Q; 3] = std::array::from_fn(|_| qf(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
        let norm2 = v.iter().fold(q(0), |a, x| a + x * x);
        // w₀ = |v|² + 1 ≥ |v| + 1/4 > |v|
        let w0 = &norm2 + q(1);
        out.push([w0, v[0].clone(), v[1].clone(), v[2].clone()]);
    }
    out
}

pub fn w_to_string(w: &[Q; 4]) -> String {
    let parts: Vec<String> = w.iter().map(q_to_string).collect();
    format!("({})", parts.join(", "))
}

/// The identification `L̸ → E̸ ≅ Cl ⊗ A` (killing `Cl ⊗ B`).
#[derive(Clone, Debug)]
pub struct SlashedQuotient {
    pub slashed: Slashed,
    /// 144 × 176 matrix.
    pub q: Mat<Q>,
}

impl SlashedQuotient {
    pub fn build() -> Result<Self, GaugeError> {
        let slashed = Slashed::build()?;
        let mut cols = slashed.cl_a();
        cols.extend(slashed.cl_b());
        let basis: Mat<Q> = (0..LDIM).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let inv = inverse(&basis).ok_or_else(|| GaugeError::SplittingFailed("Cl ⊗ (A ⊕ B) is not a basis".into()))?;
        let q = inv.into_iter().take(EDIM).collect();
        Ok(SlashedQuotient { slashed, q })
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        crate::linalg::mat_vec(&self.q, x)
    }

    /// `E̸^{⊲k}` as a subspace of the 144 coordinates.
    pub fn layer(&self, k: isize) -> Subspace<Q> {
        if k < 0 {
            return Subspace::span(Vec::new(), EDIM);
        }
        let vecs = l_layer(k as usize).into_iter().map(|c| self.q.iter().map(|r| r[c].clone()).collect()).collect();
        Subspace::span(vecs, EDIM)
    }

    /// `p^k`: a preimage in `L̸^{⊲k}`, its degree-`k` part, reduced to `Eᵏ`.
    pub fn project(&self, k: usize, x: &[Q], ideal: &Ideal) -> Result<Vec<Q>, GaugeError> {
        let cols = l_layer(k);
        let a: Mat<Q> = self.q.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let pre = solve(&a, x, cols.len()).ok_or_else(|| GaugeError::SplittingFailed(format!("element not in E̸^⊲{k}")))?;
        let mut l = LElement::<Q>::zero();
        for (v, &c) in pre.iter().zip(&cols) {
            if grade(lsplit(c).0) == k {
                l.c[c] = v.clone();
            }
        }
        Ok(ideal.e_coords(k, &l))
    }

    /// `E̸` image of the canonical lift of an `Eᵏ` vector.
    pub fn lift_e(&self, k: usize, v: &[Q], ideal: &Ideal) -> Vec<Q> {
        self.apply(&ideal.e_lift(k, v).c)
    }
}

/// Per-degree gauge data: `E_G^k` inside `Eᵏ` and `B^k` on `E_G^k × E^{k+1}`.
#[derive(Clone, Debug)]
pub struct GaugeData {
    pub b: OddForm,
    /// Bases of `E̸_G^k` (144 coordinates).
    pub eg_slashed: Vec<Vec<Vec<Q>>>,
    /// Bases of `E_G^k` in `Eᵏ` coordinates (images of `eg_slashed`).
    pub eg: Vec<Vec<Vec<Q>>>,
    /// `B^k` rows indexed by `eg[k]`, columns by `E^{k+1}` coordinates.
    pub bk: Vec<Mat<Q>>,
    pub e_ranks: Vec<usize>,
}

impl GaugeData {
    pub fn eg_ranks(&self) -> Vec<usize> {
        self.eg.iter().map(|b| b.len()).collect()
    }
}

/// Everything needed to build and check gauges.
pub struct GaugeBuilder {
    pub sq: SlashedQuotient,
    pub ideal: Ideal,
    /// `wedge[k][μ][i]`: sparse E^{k+1} coordinates of `θ_μ ∧ e_i` for the basis of E^k.
    wedge: Vec<[Vec<Vec<(usize, Q)>>; 4]>,
}

impl GaugeBuilder {
    pub fn new() -> Result<Self, GaugeError> {
        let ideal = Ideal::standard();
        let wedge = (0..4)
            .map(|k| {
                let n = ideal.complement_degree(k).len();
                std::array::from_fn(|mu| {
                    (0..n)
                        .map(|i| {
                            let mut e = vec![q(0); n];
                            e[i] = q(1);
                            let prod = LElement::ext_mul(&MultiVector::theta(mu), &ideal.e_lift(k, &e));
                            ideal.e_coords(k + 1, &prod).into_iter().enumerate().filter(|(_, v)| !Field::is_zero(v)).collect()
                        })
                        .collect()
                })
            })
            .collect();
        Ok(GaugeBuilder { sq: SlashedQuotient::build()?, ideal, wedge })
    }

    /// `E̸_G^k = {x ∈ E̸^{⊲k} | b(x, E̸^{⊲k−1}) = 0}`.
    pub fn eg_slashed(&self, b: &OddForm, k: usize) -> Vec<Vec<Q>> {
        let layer = self.sq.layer(k as isize);
        let prev = self.sq.layer(k as isize - 1);
        if prev.dim() == 0 {
            return layer.basis;
        }
        let cond: Mat<Q> = prev.basis.iter().map(|p| layer.basis.iter().map(|e| b.eval(e, p)).collect()).collect();
        kernel_q(&cond, layer.dim())
            .into_iter()
            .map(|c| {
                let mut v = vec![q(0); EDIM];
                for (cf, e) in c.iter().zip(&layer.basis) {
                    if Field::is_zero(cf) {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(e) {
                        *x += cf * y;
                    }
                }
                v
            })
            .collect()
    }

    /// `E̸^{⊲k} = E̸_G^k ⊕ w E̸^{⊲k−1}` and `E̸_G^k ∩ E̸^{⊲k−2} = 0`.
    pub fn check_slashed_split(&self, eg: &[Vec<Q>], k: usize, w: &[Q; 4]) -> bool {
        let layer = self.sq.layer(k as isize);
        let prev = self.sq.layer(k as isize - 1);
        let wm = w_matrix(w);
        let mut vecs = eg.to_vec();
        let wprev: Vec<Vec<Q>> = prev.basis.iter().map(|p| crate::linalg::mat_vec(&wm, p)).collect();
        if rank_q(&wprev, EDIM) != prev.dim() {
            return false;
        }
        vecs.extend(wprev);
        let split = eg.len() + prev.dim() == layer.dim() && rank_q(&vecs, EDIM) == layer.dim() && vecs.iter().all(|v| layer.contains(v));
        let prev2 = self.sq.layer(k as isize - 2);
        let mut both = eg.to_vec();
        both.extend(prev2.basis.clone());
        split && rank_q(&both, EDIM) == eg.len() + prev2.dim()
    }

    pub fn build_gauge(&self, b: &OddForm) -> Result<GaugeData, GaugeError> {
        let mut eg_slashed = Vec::new();
        let mut eg = Vec::new();
        for k in 0..=4 {
            let es = self.eg_slashed(b, k);
            let proj: Result<Vec<Vec<Q>>, GaugeError> = es.iter().map(|x| self.sq.project(k, x, &self.ideal)).collect();
            let proj = proj?;
            if rank_q(&proj, self.ideal.complement_degree(k).len()) != es.len() {
                return Err(GaugeError::SplittingFailed(format!("p^{k} is not injective on E̸_G^{k}")));
            }
            eg_slashed.push(es);
            eg.push(proj);
        }
        let mut bk = Vec::new();
        for k in 0..4 {
            let ncols = self.ideal.complement_degree(k + 1).len();
            let lifts: Vec<Vec<Q>> = (0..ncols)
                .map(|c| {
                    let mut v = vec![q(0); ncols];
                    v[c] = q(1);
                    self.sq.lift_e(k + 1, &v, &self.ideal)
                })
                .collect();
            let m: Mat<Q> = eg_slashed[k].iter().map(|x| lifts.iter().map(|y| b.eval(x, y)).collect()).collect();
            bk.push(m);
        }
        let e_ranks = self.ideal.quotient_ranks();
        Ok(GaugeData { b: b.clone(), eg_slashed, eg, bk, e_ranks })
    }

    /// `θ_μ ∧ x` for `x ∈ Eᵏ`, in `E^{k+1}` coordinates.
    pub fn wedge_e(&self, mu: usize, k: usize, x: &[Q]) -> Vec<Q> {
        let mut out = vec![q(0); self.ideal.complement_degree(k + 1).len()];
        if k >= 4 {
            return out;
        }
        for (xi, col) in x.iter().zip(&self.wedge[k][mu]) {
            if Field::is_zero(xi) {
                continue;
            }
            for (j, v) in col {
                out[*j] += xi * v;
            }
        }
        out
    }

    pub fn wedge_e_w(&self, w: &[Q; 4], k: usize, x: &[Q]) -> Vec<Q> {
        let n = self.ideal.complement_degree(k + 1).len();
        let mut out = vec![q(0); n];
        for (mu, wm) in w.iter().enumerate() {
            if Field::is_zero(wm) {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.wedge_e(mu, k, x)) {
                *o += wm * v;
            }
        }
        out
    }

    /// `B^k(x_i, y_j)` for the basis `x_i` of `E_G^k`, with integer dot products.
    fn pairing(g: &GaugeData, k: usize, ys: &Mat<Q>) -> Mat<Q> {
        let scale = |m: &Mat<Q>| -> Vec<BigInt> { m.iter().map(|r| r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))).collect() };
        let (ls, ms) = (scale(&g.bk[k]), scale(ys));
        let (bi, yi) = (integer_rows(&g.bk[k]), integer_rows(ys));
        bi.iter()
            .zip(&ls)
            .map(|(b, l)| {
                yi.iter()
                    .zip(&ms)
                    .map(|(y, m)| {
                        let dot = b.iter().zip(y).fold(BigInt::from(0), |acc, (u, v)| acc + u * v);
                        Q::new(dot, l * m)
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of `B^k(−, w−)` on `E_G^k × E_G^k`.
    pub fn bk_w(&self, g: &GaugeData, k: usize, w: &[Q; 4]) -> Mat<Q> {
        let wy: Vec<Vec<Q>> = g.eg[k].iter().map(|y| self.wedge_e_w(w, k, y)).collect();
        Self::pairing(g, k, &wy)
    }

    /// Definition check (a): symmetry of `B^k(−, θ_μ−)` for all `μ`.
    pub fn check_a(&self, g: &GaugeData, k: usize) -> bool {
        (0..4).all(|mu| {
            let mut w = [q(0), q(0), q(0), q(0)];
            w[mu] = q(1);
            let m = self.bk_w(g, k, &w);
            (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]))
        })
    }

    /// Definition check (b): positive definiteness of `B^k(−, w−)`.
    pub fn check_b(&self, g: &GaugeData, k: usize, w: &[Q; 4]) -> Result<(), GaugeError> {
        let m = self.bk_w(g, k, w);
        for (i, d) in leading_principal_minors(&m).into_iter().enumerate() {
            if d <= q(0) {
                return Err(GaugeError::NotPositive { w: w_to_string(w), index: i + 1, minor: q_to_string(&d) });
            }
        }
        Ok(())
    }

    /// Definition check (c): `E_G^{k+1} = {x | B^k(E_G^k, x) = 0}`.
    pub fn check_c(&self, g: &GaugeData, k: usize) -> bool {
        let n = self.ideal.complement_degree(k + 1).len();
        let next = &g.eg[k + 1];
        let annihilated = Self::pairing(g, k, next).iter().flatten().all(Field::is_zero);
        annihilated && rank_q(next, n) == next.len() && n - rank_q(&g.bk[k], n) == next.len()
    }

    /// `E^k = E_G^k ⊕ w E_G^{k−1}` with `w` injective on `E_G^{k−1}`.
    pub fn check_split(&self, g: &GaugeData, k: usize, w: &[Q; 4]) -> bool {
        let n = self.ideal.complement_degree(k).len();
        let mut vecs = g.eg[k].clone();
        if k > 0 {
            let wv: Vec<Vec<Q>> = g.eg[k - 1].iter().map(|y| self.wedge_e_w(w, k - 1, y)).collect();
            if rank_q(&wv, n) != g.eg[k - 1].len() {
                return false;
            }
            vecs.extend(wv);
        }
        vecs.len() == n && rank_q(&vecs, n) == n
    }

    /// `B^k(x', w y') = b(x, w y)` for `x ∈ E̸_G^k`, `y ∈ E̸_G^k`.
    pub fn check_consistency(&self, g: &GaugeData, k: usize, w: &[Q; 4]) -> bool {
        let wm = w_matrix(w);
        let direct: Mat<Q> = g.eg_slashed[k]
            .iter()
            .map(|x| g.eg_slashed[k].iter().map(|y| g.b.eval(x, &crate::linalg::mat_vec(&wm, y))).collect())
            .collect();
        direct == self.bk_w(g, k, w)
    }
}
