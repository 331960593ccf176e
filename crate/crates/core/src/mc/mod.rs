//! Formal Maurer-Cartan theory for graded Lie algebras free over `Q[[s]]`:
//! truncated series arithmetic, homology of `d = [x₀, −]`, the unobstructed
//! recursion and Rees algebras of filtrations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{q, qf, q_to_string, Field, Q};
use crate::glaoid::{bracket_const, lsplit, Ideal, LElement};
use crate::clifford::grade;
use crate::linalg::{inverse, is_zero_vec, kernel, mat_vec, rank, solve, Mat, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error("x₀ is not Maurer-Cartan")]
    NotMc,
    #[error("obstructed: dim H² = {0}")]
    Obstructed(usize),
    #[error("clause {clause}_{k} failed")]
    AssertionFailed { clause: char, k: usize },
    #[error("not a filtration: {0}")]
    NotAFiltration(String),
    #[error("element is not homogeneous of degree {0}")]
    WrongDegree(i32),
}

type Sparse = Vec<(usize, Q)>;

/// A finite-dimensional graded Lie algebra in a homogeneous basis.
#[derive(Clone, Debug)]
pub struct FiniteGLa {
    pub deg: Vec<i32>,
    /// `[e_i, e_j] = Σ table[i][j]`.
    pub table: Vec<Vec<Sparse>>,
}

fn koszul(a: i32, b: i32) -> i64 {
    if (a * b).rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

impl FiniteGLa {
    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    pub fn degree_indices(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.deg[i] == k).collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d = self.deg.clone();
        d.sort();
        d.dedup();
        d
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![q(0); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if Field::is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if Field::is_zero(yj) {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.table[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![q(0); self.dim()];
        v[i] = q(1);
        v
    }

    /// Graded antisymmetry and degree additivity on basis pairs.
    pub fn check_antisymmetry(&self) -> bool {
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let s = q(-koszul(self.deg[i], self.deg[j]));
                let a = self.bracket(&self.basis(i), &self.basis(j));
                let b = self.bracket(&self.basis(j), &self.basis(i));
                let degree_ok = self.table[i][j].iter().all(|(k, _)| self.deg[*k] == self.deg[i] + self.deg[j]);
                degree_ok && a.iter().zip(&b).all(|(x, y)| *x == y * &s)
            })
        })
    }

    /// Graded Jacobi on a basis triple.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
        let lhs = self.bracket(&x, &self.bracket(&y, &z));
        let r1 = self.bracket(&self.bracket(&x, &y), &z);
        let r2 = self.bracket(&y, &self.bracket(&x, &z));
        let s = q(koszul(self.deg[i], self.deg[j]));
        lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a + &(b * &s))
    }

    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.jacobi_holds(i, j, k))))
    }

    /// Matrix of `d = [x₀, −]` from degree `k` to `k + 1`.
    pub fn d_matrix(&self, x0: &[Q], k: i32) -> Mat<Q> {
        let src = self.degree_indices(k);
        let dst = self.degree_indices(k + 1);
        let cols: Vec<Vec<Q>> = src.iter().map(|&i| self.bracket(x0, &self.basis(i))).collect();
        dst.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    pub fn is_homogeneous(&self, x: &[Q], k: i32) -> bool {
        x.iter().enumerate().all(|(i, v)| Field::is_zero(v) || self.deg[i] == k)
    }
}

/// The abelian gLa with the given number of basis elements per degree.
pub fn abelian(dims: &[(i32, usize)]) -> FiniteGLa {
    let deg: Vec<i32> = dims.iter().flat_map(|&(d, n)| std::iter::repeat(d).take(n)).collect();
    let n = deg.len();
    FiniteGLa { deg, table: vec![vec![Vec::new(); n]; n] }
}

/// Graded endomorphisms of `V = ⊕ V_p` (`dims[p] = dim V_p`) with the graded
/// commutator. Basis elements `E_{ab}` (mapping basis vector `b` to `a`) are
/// ordered by degree.
pub fn endomorphisms(dims: &[usize]) -> (FiniteGLa, Vec<(usize, usize)>) {
    let vdeg: Vec<i32> = dims.iter().enumerate().flat_map(|(p, &n)| std::iter::repeat(p as i32).take(n)).collect();
    let nv = vdeg.len();
    let mut elems: Vec<(usize, usize)> = (0..nv).flat_map(|a| (0..nv).map(move |b| (a, b))).collect();
    elems.sort_by_key(|&(a, b)| (vdeg[a] - vdeg[b], a, b));
    let deg: Vec<i32> = elems.iter().map(|&(a, b)| vdeg[a] - vdeg[b]).collect();
    let index = |a: usize, b: usize| elems.iter().position(|&e| e == (a, b)).expect("element");
    let n = elems.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = elems[i];
            let (c, d) = elems[j];
            let mut entry: Sparse = Vec::new();
            if b == c {
                entry.push((index(a, d), q(1)));
            }
            if d == a {
                let s = -koszul(deg[i], deg[j]);
                let k = index(c, b);
                match entry.iter_mut().find(|(e, _)| *e == k) {
                    Some(e) => e.1 += q(s),
                    None => entry.push((k, q(s))),
                }
            }
            entry.retain(|(_, v)| !Field::is_zero(v));
            table[i][j] = entry;
        }
    }
    (FiniteGLa { deg, table }, elems)
}

/// The constant fiber of `E = L/I`: constant-coefficient elements with the
/// bracket reduced modulo `I`. Returns the gLa and the `L` coordinates of
/// its basis.
pub fn gravity_fiber(ideal: &Ideal) -> (FiniteGLa, Vec<usize>) {
    let coords = ideal.complement();
    let n = coords.len();
    let deg: Vec<i32> = coords.iter().map(|&c| grade(lsplit(c).0) as i32).collect();
    let pos_of: std::collections::HashMap<usize, usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let unit = |c: usize| {
        let mut v = vec![q(0); crate::glaoid::LDIM];
        v[c] = q(1);
        v
    };
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = bracket_const(&unit(coords[i]), &unit(coords[j]));
            if is_zero_vec(&br) {
                continue;
            }
            let red = ideal.reduce(&LElement::from_vec(br));
            table[i][j] = red.c.iter().enumerate().filter(|(_, v)| !Field::is_zero(*v)).map(|(c, v)| (pos_of[&c], v.clone())).collect();
        }
    }
    (FiniteGLa { deg, table }, coords)
}

/// `x_mink` in fiber coordinates.
pub fn fiber_point(coords: &[usize], x: &LElement<Q>) -> Vec<Q> {
    coords.iter().map(|&c| x.c[c].clone()).collect()
}

/// A gLa free over `Q[[s]]`: `[e_i, e_j] = Σ s^p c e_k` with entries
/// `(p, k, c)`, truncated at `s^{kmax}`.
#[derive(Clone, Debug)]
pub struct FreeSeriesGLa {
    pub deg: Vec<i32>,
    pub table: Vec<Vec<Vec<(usize, usize, Q)>>>,
    pub kmax: usize,
}

/// A truncated series `Σ_{p ≤ kmax} s^p c[p]`.
pub type Series = Vec<Vec<Q>>;

impl FreeSeriesGLa {
    pub fn plain(g: &FiniteGLa, kmax: usize) -> Self {
        let table = g.table.iter().map(|row| row.iter().map(|e| e.iter().map(|(k, v)| (0, *k, v.clone())).collect()).collect()).collect();
        FreeSeriesGLa { deg: g.deg.clone(), table, kmax }
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    /// The gLa `𝔭/s𝔭`.
    pub fn reduction(&self) -> FiniteGLa {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|e| e.iter().filter(|(p, _, _)| *p == 0).map(|(_, k, v)| (*k, v.clone())).collect()).collect())
            .collect();
        FiniteGLa { deg: self.deg.clone(), table }
    }

    pub fn zero_series(&self) -> Series {
        vec![vec![q(0); self.dim()]; self.kmax + 1]
    }

    pub fn constant(&self, x: &[Q]) -> Series {
        let mut s = self.zero_series();
        s[0] = x.to_vec();
        s
    }

    pub fn bracket(&self, x: &Series, y: &Series) -> Series {
        let mut out = self.zero_series();
        for (a, xa) in x.iter().enumerate() {
            for (i, xi) in xa.iter().enumerate() {
                if Field::is_zero(xi) {
                    continue;
                }
                for (b, yb) in y.iter().enumerate() {
                    if a + b > self.kmax {
                        break;
                    }
                    for (j, yj) in yb.iter().enumerate() {
                        if Field::is_zero(yj) {
                            continue;
                        }
                        let c = xi * yj;
                        for (p, k, v) in &self.table[i][j] {
                            let e = a + b + p;
                            if e <= self.kmax {
                                out[e][*k] += &c * v;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Graded antisymmetry and Jacobi for basis elements, mod `s^{kmax+1}`.
    pub fn check_axioms(&self) -> bool {
        let n = self.dim();
        let basis = |i: usize| {
            let mut s = self.zero_series();
            s[0][i] = q(1);
            s
        };
        let add = |a: &Series, b: &Series, sign: i64| -> Series {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + &(v * q(sign))).collect()).collect()
        };
        for i in 0..n {
            for j in 0..n {
                let s = -koszul(self.deg[i], self.deg[j]);
                if self.bracket(&basis(i), &basis(j)) != add(&self.zero_series(), &self.bracket(&basis(j), &basis(i)), s) {
                    return false;
                }
                for k in 0..n {
                    let lhs = self.bracket(&basis(i), &self.bracket(&basis(j), &basis(k)));
                    let r1 = self.bracket(&self.bracket(&basis(i), &basis(j)), &basis(k));
                    let r2 = self.bracket(&basis(j), &self.bracket(&basis(i), &basis(k)));
                    if lhs != add(&r1, &r2, koszul(self.deg[i], self.deg[j])) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Rees algebra of a filtration `F_0 ⊂ F_1 ⊂ … ⊂ F_m = 𝔤`, each `F_p` given by
/// homogeneous spanning vectors. The result is expressed in an adapted basis
/// `s^{ℓ_i} e_i` where `ℓ_i` is the filtration level of `e_i`; also returns
/// the adapted basis vectors and their levels.
pub fn rees_algebra(g: &FiniteGLa, filtration: &[Vec<Vec<Q>>], kmax: usize) -> Result<(FreeSeriesGLa, Vec<Vec<Q>>, Vec<usize>), McError> {
    let n = g.dim();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut levels = Vec::new();
    let mut prev = Subspace::span(Vec::new(), n);
    for (p, f) in filtration.iter().enumerate() {
        let mut span = prev.basis.clone();
        for v in f {
            let d = v.iter().enumerate().find(|(_, c)| !Field::is_zero(*c)).map(|(i, _)| g.deg[i]);
            if let Some(d) = d {
                if !g.is_homogeneous(v, d) {
                    return Err(McError::NotAFiltration(format!("F_{p} has an inhomogeneous generator")));
                }
            }
            span.push(v.clone());
        }
        let cur = Subspace::span(span, n);
        for v in f {
            if !prev.contains(v) && !Subspace::span(basis.clone(), n).contains(v) {
                basis.push(v.clone());
                levels.push(p);
            }
        }
        if !cur.contains_all(&prev) {
            return Err(McError::NotAFiltration(format!("F_{p} does not contain F_{}", p.saturating_sub(1))));
        }
        prev = cur;
    }
    if prev.dim() != n || basis.len() != n {
        return Err(McError::NotAFiltration("last step is not the whole algebra".into()));
    }
    // Columns are adapted basis vectors.
    let cols: Mat<Q> = (0..n).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    let inv = inverse(&cols).expect("adapted basis is a basis");
    let deg: Vec<i32> = basis
        .iter()
        .map(|b| b.iter().enumerate().find(|(_, c)| !Field::is_zero(*c)).map(|(i, _)| g.deg[i]).expect("nonzero"))
        .collect();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = mat_vec(&inv, &g.bracket(&basis[i], &basis[j]));
            for (k, c) in br.into_iter().enumerate() {
                if Field::is_zero(&c) {
                    continue;
                }
                let total = levels[i] + levels[j];
                if levels[k] > total {
                    return Err(McError::NotAFiltration(format!("[F_{}, F_{}] ⊄ F_{total}", levels[i], levels[j])));
                }
                table[i][j].push((total - levels[k], k, c));
            }
        }
    }
    Ok((FreeSeriesGLa { deg, table, kmax }, basis, levels))
}

/// Homology of `d = [x₀, −]` with the data used by the recursion.
#[derive(Clone, Debug)]
pub struct Homology {
    /// `(degree, dim H^k)`.
    pub dims: Vec<(i32, usize)>,
    /// Representatives of a basis of `H¹` (full coordinates).
    pub reps: Vec<Vec<Q>>,
    /// `h: 𝔞² → 𝔞¹` in full coordinates, with `d h = 1` on `ker d ∩ 𝔞²`
    /// when `H² = 0`.
    pub h: Mat<Q>,
    d1: Mat<Q>,
}

impl Homology {
    pub fn dim(&self, k: i32) -> usize {
        self.dims.iter().find(|(d, _)| *d == k).map(|x| x.1).unwrap_or(0)
    }
}

pub fn homology(g: &FiniteGLa, x0: &[Q]) -> Result<Homology, McError> {
    if !g.is_homogeneous(x0, 1) {
        return Err(McError::WrongDegree(1));
    }
    if !is_zero_vec(&g.bracket(x0, x0)) {
        return Err(McError::NotMc);
    }
    let mut dims = Vec::new();
    for k in g.degrees() {
        let n = g.degree_indices(k).len();
        let dk = g.d_matrix(x0, k);
        let rk = rank(dk, n);
        let rprev = rank(g.d_matrix(x0, k - 1), g.degree_indices(k - 1).len());
        dims.push((k, n - rk - rprev));
    }
    let i0 = g.degree_indices(0);
    let i1 = g.degree_indices(1);
    let i2 = g.degree_indices(2);
    let d0 = g.d_matrix(x0, 0);
    let d1 = g.d_matrix(x0, 1);
    let embed = |idx: &[usize], v: &[Q]| {
        let mut out = vec![q(0); g.dim()];
        for (&i, c) in idx.iter().zip(v) {
            out[i] = c.clone();
        }
        out
    };
    // H¹ representatives: a complement of im d⁰ inside ker d¹.
    let n1 = i1.len();
    let im0: Mat<Q> = (0..i0.len()).map(|c| d0.iter().map(|r| r[c].clone()).collect()).collect();
    let mut span = Subspace::span(im0, n1);
    let mut reps = Vec::new();
    for v in kernel(d1.clone(), n1) {
        if !span.contains(&v) {
            let mut b = span.basis.clone();
            b.push(v.clone());
            span = Subspace::span(b, n1);
            reps.push(embed(&i1, &v));
        }
    }
    // h: preimages on a basis of im d¹, zero on coordinate complement.
    let n2 = i2.len();
    let mut img = Vec::new();
    let mut pre = Vec::new();
    for c in 0..n1 {
        let col: Vec<Q> = d1.iter().map(|r| r[c].clone()).collect();
        let mut cand = img.clone();
        cand.push(col.clone());
        if rank(cand, n2) > img.len() {
            img.push(col);
            let mut u = vec![q(0); n1];
            u[c] = q(1);
            pre.push(u);
        }
    }
    let sub = Subspace::span(img.clone(), n2);
    let comp = sub.complement_columns();
    let mut full = img.clone();
    let mut images = pre.clone();
    for &c in &comp {
        let mut e = vec![q(0); n2];
        e[c] = q(1);
        full.push(e);
        images.push(vec![q(0); n1]);
    }
    let mut h = vec![vec![q(0); g.dim()]; g.dim()];
    if n2 > 0 {
        let bmat: Mat<Q> = (0..n2).map(|r| full.iter().map(|b| b[r].clone()).collect()).collect();
        let binv = inverse(&bmat).expect("basis of 𝔞²");
        for (a, &ra) in i1.iter().enumerate() {
            for (b, &cb) in i2.iter().enumerate() {
                let mut acc = q(0);
                for (t, img_t) in images.iter().enumerate() {
                    if !Field::is_zero(&img_t[a]) && !Field::is_zero(&binv[t][b]) {
                        acc += &img_t[a] * &binv[t][b];
                    }
                }
                h[ra][cb] = acc;
            }
        }
    }
    Ok(Homology { dims, reps, h, d1: embed_matrix(g, &d1, &i1, &i2) })
}

fn embed_matrix(g: &FiniteGLa, m: &Mat<Q>, src: &[usize], dst: &[usize]) -> Mat<Q> {
    let mut out = vec![vec![q(0); g.dim()]; g.dim()];
    for (r, &dr) in dst.iter().enumerate() {
        for (c, &sc) in src.iter().enumerate() {
            out[dr][sc] = m[r][c].clone();
        }
    }
    out
}

/// Per-order clause results.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClauseReport {
    pub k: usize,
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

#[derive(Clone, Debug)]
pub struct McSolution {
    /// `c₀ … c_K` in `𝔞¹`.
    pub c: Vec<Vec<Q>>,
    pub xi: Vec<Q>,
    pub clauses: Vec<ClauseReport>,
    /// `[Ξ_{≤K}, Ξ_{≤K}] ≡ 0 mod s^{K+1}` for each `K = 0..order`.
    pub residual_ok: Vec<bool>,
}

impl McSolution {
    pub fn series(&self, p: &FreeSeriesGLa) -> Series {
        let mut s = p.zero_series();
        for (k, c) in self.c.iter().enumerate() {
            if k <= p.kmax {
                s[k] = c.clone();
            }
        }
        s
    }

    pub fn all_ok(&self) -> bool {
        self.residual_ok.iter().all(|b| *b) && self.clauses.iter().all(|c| c.a && c.b && c.c)
    }
}

fn truncate(s: &Series, k: usize) -> Series {
    s.iter().enumerate().map(|(p, v)| if p <= k { v.clone() } else { vec![q(0); v.len()] }).collect()
}

/// The unobstructed recursion `c₁ = −½ihp(e₀/s) + irξ`,
/// `c_{K+1} = −½ihp(e_K/s^{K+1})`, with clauses `A_K`, `B_K`, `C_K` checked.
pub fn mc_recursion(p: &FreeSeriesGLa, x0: &[Q], xi: &[Q], order: usize) -> Result<McSolution, McError> {
    mc_recursion_with(p, x0, xi, order, true)
}

/// As [`mc_recursion`]; with `strict = false` a nonzero `H²` is tolerated and
/// the recursion proceeds as long as every obstruction class vanishes
/// (clause `C_K` fails otherwise).
pub fn mc_recursion_with(p: &FreeSeriesGLa, x0: &[Q], xi: &[Q], order: usize, strict: bool) -> Result<McSolution, McError> {
    let a = p.reduction();
    let hom = homology(&a, x0)?;
    let h2 = hom.dim(2);
    if strict && h2 > 0 {
        return Err(McError::Obstructed(h2));
    }
    let order = order.min(p.kmax.saturating_sub(1));
    let mut c = vec![x0.to_vec()];
    let mut clauses = Vec::new();
    let mut residual_ok = Vec::new();
    for k in 0..=order {
        let mut xi_series = p.zero_series();
        for (j, cj) in c.iter().enumerate() {
            xi_series[j] = cj.clone();
        }
        let e = p.bracket(&xi_series, &xi_series);
        let a_ok = (0..=k).all(|j| is_zero_vec(&e[j]));
        residual_ok.push(a_ok);
        let top = e[k + 1].clone();
        let b_ok = is_zero_vec(&a.bracket(x0, &top));
        let mut next: Vec<Q> = mat_vec(&hom.h, &top).into_iter().map(|v| v * qf(-1, 2)).collect();
        if k == 0 {
            let rxi = hom.reps.iter().zip(xi).fold(vec![q(0); a.dim()], |acc, (r, x)| {
                acc.iter().zip(r).map(|(u, v)| u + &(v * x)).collect()
            });
            next = next.iter().zip(&rxi).map(|(u, v)| u + v).collect();
        }
        let dnext = mat_vec(&hom.d1, &next);
        let c_ok = dnext.iter().zip(&top).all(|(u, v)| *u == v * qf(-1, 2));
        clauses.push(ClauseReport { k, a: a_ok, b: b_ok, c: c_ok });
        if !a_ok {
            return Err(McError::AssertionFailed { clause: 'A', k });
        }
        if !b_ok {
            return Err(McError::AssertionFailed { clause: 'B', k });
        }
        if !c_ok {
            return Err(McError::AssertionFailed { clause: 'C', k });
        }
        c.push(next);
    }
    c.truncate(order + 1);
    // Final residual check on Ξ_{≤order}.
    let mut sol = McSolution { c, xi: xi.to_vec(), clauses, residual_ok };
    let s = truncate(&sol.series(p), order);
    let e = p.bracket(&s, &s);
    let last = (0..=order).all(|j| is_zero_vec(&e[j]));
    if let Some(r) = sol.residual_ok.last_mut() {
        *r = *r && last;
    }
    Ok(sol)
}

/// `[Ξ, Ξ] ≡ 0 mod s^{k+1}`.
pub fn is_mc_mod(p: &FreeSeriesGLa, x: &Series, k: usize) -> bool {
    let e = p.bracket(x, x);
    (0..=k.min(p.kmax)).all(|j| is_zero_vec(&e[j]))
}

/// `exp(ad y)(x)` truncated at `s^{kmax}`, for `y ∈ s𝔭⁰`.
pub fn gauge_act(p: &FreeSeriesGLa, y: &Series, x: &Series) -> Series {
    let mut out = x.clone();
    let mut term = x.clone();
    for n in 1..=p.kmax {
        term = p.bracket(y, &term);
        let f = qf(1, 1) / Q::from_integer(num_bigint::BigInt::from((1..=n as i64).product::<i64>()));
        let mut zero = true;
        for (o, t) in out.iter_mut().zip(&term) {
            for (a, b) in o.iter_mut().zip(t) {
                if !Field::is_zero(b) {
                    zero = false;
                    *a += b * &f;
                }
            }
        }
        if zero {
            break;
        }
    }
    out
}

/// Random `y ∈ s𝔭⁰` with small rational entries.
pub fn random_gauge(p: &FreeSeriesGLa, seed: u64) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = p.zero_series();
    for coeff in y.iter_mut().skip(1).take(2) {
        for (i, v) in coeff.iter_mut().enumerate() {
            if p.deg[i] == 0 {
                *v = qf(rng.gen_range(-3..=3), rng.gen_range(1..=3));
            }
        }
    }
    y
}

/// Homogeneous parts of `c_k(ξ)` in `ξ`: `c_k(tξ) = Σ_j t^j φ_{k,j}(ξ)`,
/// recovered by solving a Vandermonde system over `t = 0..=k`.
pub fn homogeneous_parts(p: &FreeSeriesGLa, x0: &[Q], xi: &[Q], k: usize) -> Result<Vec<Vec<Q>>, McError> {
    let samples: Result<Vec<Vec<Q>>, McError> = (0..=k)
        .map(|t| {
            let scaled: Vec<Q> = xi.iter().map(|v| v * q(t as i64)).collect();
            Ok(mc_recursion(p, x0, &scaled, k)?.c[k].clone())
        })
        .collect();
    let samples = samples?;
    let vander: Mat<Q> = (0..=k).map(|t| (0..=k).map(|j| q((t as i64).pow(j as u32))).collect()).collect();
    let dim = p.dim();
    let mut parts = vec![vec![q(0); dim]; k + 1];
    for i in 0..dim {
        let rhs: Vec<Q> = samples.iter().map(|s| s[i].clone()).collect();
        let sol = solve(&vander, &rhs, k + 1).expect("Vandermonde is invertible");
        for (j, v) in sol.into_iter().enumerate() {
            parts[j][i] = v;
        }
    }
    Ok(parts)
}

/// The nonabelian synthetic example: endomorphisms of `V = Q² ⊕ Q² ⊕ Q` in
/// degrees 0, 1, 2 and `x₀` a rank-one map `V₁ → V₂`. Its homology is
/// `End(H(V))` with `H(V)` in degrees 0 and 1, so `H² = 0` and `H¹ ≠ 0`.
pub fn endo_example() -> (FiniteGLa, Vec<Q>) {
    let (g, elems) = endomorphisms(&[2, 2, 1]);
    let mut x0 = vec![q(0); g.dim()];
    // basis vector 2 spans part of V₁, basis vector 4 is V₂
    let i = elems.iter().position(|&e| e == (4, 2)).expect("element");
    x0[i] = q(1);
    (g, x0)
}

/// The two-degree endomorphism example: `V = Q ⊕ Q` and `x₀` the degree-1
/// identity `V₀ → V₁`; `𝔞² = 0`.
pub fn endo_identity_example() -> (FiniteGLa, Vec<Q>) {
    let (g, elems) = endomorphisms(&[1, 1]);
    let mut x0 = vec![q(0); g.dim()];
    x0[elems.iter().position(|&e| e == (1, 0)).expect("element")] = q(1);
    (g, x0)
}

/// Rees algebra of `F₀ = 𝔤^{≥1} ⊂ F₁ = 𝔤` for the nonabelian example.
pub fn rees_example(kmax: usize) -> Result<(FreeSeriesGLa, Vec<Q>), McError> {
    let (g, x0) = endo_example();
    let f0: Vec<Vec<Q>> = (0..g.dim()).filter(|&i| g.deg[i] >= 1).map(|i| g.basis(i)).collect();
    let f1: Vec<Vec<Q>> = (0..g.dim()).map(|i| g.basis(i)).collect();
    let (p, basis, _) = rees_algebra(&g, &[f0, f1], kmax)?;
    let cols: Mat<Q> = (0..g.dim()).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    let inv = inverse(&cols).expect("basis");
    Ok((p, mat_vec(&inv, &x0)))
}

/// For each `H¹` representative of the gravity fiber, whether it is a
/// constant frame deformation (supported on `θ_μ ⊗ ∂̂_ν`).
pub fn frame_directions(g: &FiniteGLa, coords: &[usize], x0: &[Q]) -> Vec<bool> {
    match homology(g, x0) {
        Ok(h) => h
            .reps
            .iter()
            .map(|r| r.iter().enumerate().all(|(i, v)| Field::is_zero(v) || lsplit(coords[i]).1 < 4))
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Human-readable table of the `c_k`.
pub fn format_solution(sol: &McSolution) -> Vec<Vec<(usize, String)>> {
    sol.c
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, v)| !Field::is_zero(*v)).map(|(i, v)| (i, q_to_string(v))).collect())
        .collect()
}

#[cfg(test)]
mod tests;
