//! Exact dense and sparse linear algebra over any [`Field`].
//!
//! Matrices are `Vec` of rows. Vectors are plain `Vec<T>`.

use std::collections::BTreeMap;


use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::field::{Field, Q};

pub type Mat<T> = Vec<Vec<T>>;

pub fn zeros<T: Field>(rows: usize, cols: usize) -> Mat<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Field>(n: usize) -> Mat<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Field>(m: &Mat<T>, cols: usize) -> Mat<T> {
    let mut out = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

pub fn mat_mul<T: Field>(a: &Mat<T>, b: &Mat<T>, b_cols: usize) -> Mat<T> {
    let mut out: Mat<T> = zeros(a.len(), b_cols);
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..b_cols {
                out[i][j].add_mul_assign(aik, &b[k][j]);
            }
        }
    }
    out
}

pub fn mat_vec<T: Field>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = T::zero();
            for (x, y) in row.iter().zip(v) {
                acc.add_mul_assign(x, y);
            }
            acc
        })
        .collect()
}

pub fn is_zero_vec<T: Field>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<T: Field>(mut rows: Mat<T>, cols: usize) -> (Mat<T>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].weight());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !rows[r][c].is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j].sub_mul_assign(&f, &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<T: Field>(rows: Mat<T>, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn kernel<T: Field>(a: Mat<T>, cols: usize) -> Mat<T> {
    let (r, pivots) = rref(a, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &p) in r.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        out.push(v);
    }
    out
}

/// Clears denominators row by row.
pub(crate) fn integer_rows(rows: &Mat<Q>) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free Gauss-Jordan elimination over the integers. Every pivot row ends with
/// the common value `d` in its pivot column, so the reduced form is `rows / d`.
fn fraction_free_gj(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).filter(|&i| a[i][c].sign() != num_bigint::Sign::NoSign).min_by_key(|&i| a[i][c].bits()) else { continue };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let t = &pv * &*x - &f * y;
                *x = if prev.is_one() { t } else { t / &prev };
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots, prev)
}

/// [`rank`] specialised to rationals, without rational arithmetic during elimination.
pub fn rank_q(rows: &Mat<Q>, cols: usize) -> usize {
    fraction_free_gj(integer_rows(rows), cols).1.len()
}

/// Kernel basis over `Q` made of primitive integer vectors. Spans the same space as [`kernel`].
pub fn kernel_q(rows: &Mat<Q>, cols: usize) -> Mat<Q> {
    let (a, pivots, d) = fraction_free_gj(integer_rows(rows), cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![BigInt::from(0); cols];
            v[free] = d.clone();
            for (row, &p) in a.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            let mut g = v.iter().fold(BigInt::from(0), |acc, x| acc.gcd(x));
            if d.is_negative() {
                g = -g;
            }
            v.into_iter().map(|x| Q::from_integer(x / &g)).collect()
        })
        .collect()
}

/// Some solution of `A x = b`, if one exists.
pub fn solve<T: Field>(a: &Mat<T>, b: &[T], cols: usize) -> Option<Vec<T>> {
    let aug: Mat<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

pub fn inverse<T: Field>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.len();
    let aug: Mat<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn det<T: Field>(a: &Mat<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = d * piv.clone();
        let inv = piv.inv();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for j in c..n {
                let t = m[c][j].clone();
                m[i][j].sub_mul_assign(&f, &t);
            }
        }
    }
    d
}

/// All leading principal minors `det A[..k, ..k]`, `k = 1..=n`.
///
/// Uses elimination without row exchanges; when a zero pivot appears the
/// remaining minors are computed directly.
pub fn leading_principal_minors<T: Field>(a: &Mat<T>) -> Vec<T> {
    let n = a.len();
    let mut m = a.clone();
    let mut out = Vec::with_capacity(n);
    let mut prod = T::one();
    for c in 0..n {
        if m[c][c].is_zero() {
            for k in c + 1..=n {
                let sub: Mat<T> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
                out.push(det(&sub));
            }
            return out;
        }
        let piv = m[c][c].clone();
        prod = prod * piv.clone();
        out.push(prod.clone());
        let inv = piv.inv();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for j in c..n {
                let t = m[c][j].clone();
                m[i][j].sub_mul_assign(&f, &t);
            }
        }
    }
    out
}

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    pub dim_ambient: usize,
    pub basis: Mat<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn span(vectors: Mat<T>, dim_ambient: usize) -> Self {
        let (basis, pivots) = rref(vectors, dim_ambient);
        Subspace { dim_ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduce `v` against the basis; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    r[j].sub_mul_assign(&f, x);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[T]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_all(&self, other: &Subspace<T>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace<T>) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        if self.contains(v) {
            Some(coords)
        } else {
            None
        }
    }

    /// Non-pivot columns: coordinates of the quotient by this subspace.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim_ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim_ambient).filter(|&j| !is_pivot[j]).collect()
    }
}

pub type SparseRow = BTreeMap<usize, Q>;

/// Rank of a sparse rational matrix, eliminating row by row.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut basis: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else { break };
            let Some(b) = basis.get(&lead) else {
                let inv = lead_val.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                basis.insert(lead, row);
                break;
            };
            let f = lead_val.clone();
            for (k, v) in b {
                let e = row.entry(*k).or_insert_with(<Q as Field>::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
    }
    basis.len()
}
