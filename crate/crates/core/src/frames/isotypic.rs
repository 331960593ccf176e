//! Exact `so(W)`-isotypic decomposition of finite-dimensional real
//! representations, through the two commuting `su(2)` Casimirs.

use std::fmt;

use thiserror::Error;

use crate::field::{q, qf, Field, Q};
use crate::linalg::{kernel, mat_mul, Mat, Subspace};
use crate::scalar::CQ;

use super::so_w_structure;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsotypicError {
    #[error("matrices do not represent so(W): {0}")]
    NotARepresentation(String),
    #[error("eigenspaces do not span the module ({found} of {dim})")]
    Incomplete { found: usize, dim: usize },
}

/// `(p, q)` stored as `(2p, 2q)`; `paired` marks the real form `(p,q) ⊕ (q,p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotypicLabel {
    pub two_p: u32,
    pub two_q: u32,
    pub paired: bool,
}

impl IsotypicLabel {
    pub fn new(two_p: u32, two_q: u32) -> Self {
        let paired = two_p != two_q;
        let (a, b) = if two_p >= two_q { (two_p, two_q) } else { (two_q, two_p) };
        IsotypicLabel { two_p: a, two_q: b, paired }
    }

    /// Real dimension of one irreducible copy.
    pub fn irrep_dim(&self) -> usize {
        let d = ((self.two_p + 1) * (self.two_q + 1)) as usize;
        if self.paired {
            2 * d
        } else {
            d
        }
    }
}

fn half(n: u32) -> String {
    if n % 2 == 0 {
        (n / 2).to_string()
    } else {
        format!("{n}/2")
    }
}

impl fmt::Display for IsotypicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (half(self.two_p), half(self.two_q));
        if self.paired {
            write!(f, "({p},{q})⊕({q},{p})")
        } else {
            write!(f, "({p},{q})")
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub label: IsotypicLabel,
    /// Rows span the (real) component.
    pub basis: Mat<Q>,
}

fn commutator(a: &Mat<Q>, b: &Mat<Q>, n: usize) -> Mat<Q> {
    let ab = mat_mul(a, b, n);
    let ba = mat_mul(b, a, n);
    ab.into_iter().zip(ba).map(|(r, s)| r.into_iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

/// Check that `reps` (in the order `σ₁, σ₂, σ₃, σ₂₃, σ₃₁, σ₁₂`) satisfy the
/// commutation relations of `so(W)`.
pub fn check_representation(reps: &[Mat<Q>]) -> Result<usize, IsotypicError> {
    if reps.len() != 6 {
        return Err(IsotypicError::NotARepresentation(format!("expected 6 matrices, got {}", reps.len())));
    }
    let n = reps[0].len();
    if reps.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
        return Err(IsotypicError::NotARepresentation("matrices are not square of equal size".into()));
    }
    let s = so_w_structure();
    for a in 0..6 {
        for b in a + 1..6 {
            let lhs = commutator(&reps[a], &reps[b], n);
            let mut rhs: Mat<Q> = vec![vec![q(0); n]; n];
            for c in 0..6 {
                if Field::is_zero(&s[a][b][c]) {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        rhs[i][j] += &s[a][b][c] * &reps[c][i][j];
                    }
                }
            }
            if lhs != rhs {
                return Err(IsotypicError::NotARepresentation(format!("commutator of generators {a} and {b} fails")));
            }
        }
    }
    Ok(n)
}

/// `Σ_a X_a²` with `X_a = (J_a + sign·i K_a)/2`.
fn casimir(reps: &[Mat<Q>], n: usize, sign: i64) -> Mat<CQ> {
    let mut out: Mat<CQ> = vec![vec![CQ::zero(); n]; n];
    for a in 0..3 {
        let x: Mat<CQ> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| CQ::new(reps[3 + a][i][j].clone() * qf(1, 2), reps[a][i][j].clone() * qf(sign, 2)))
                    .collect()
            })
            .collect();
        let sq = mat_mul(&x, &x, n);
        for i in 0..n {
            for j in 0..n {
                out[i][j] = out[i][j].clone() + sq[i][j].clone();
            }
        }
    }
    out
}

fn shifted(c: &Mat<CQ>, two_p: u32) -> Mat<CQ> {
    let p = qf(two_p as i64, 2);
    let v = &p * (&p + q(1));
    let mut m = c.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].clone() + CQ::from_q(&v);
    }
    m
}

/// Decompose a real representation of `so(W)` into real isotypic components.
///
/// `flip_orientation` uses `A = (J − iK)/2` instead of `(J + iK)/2`; the real
/// components are the same either way.
pub fn isotypic_decompose(reps: &[Mat<Q>], flip_orientation: bool) -> Result<Vec<IsotypicComponent>, IsotypicError> {
    let n = check_representation(reps)?;
    let sa = if flip_orientation { -1 } else { 1 };
    let ca = casimir(reps, n, sa);
    let cb = casimir(reps, n, -sa);
    let max_two = n as u32;
    let mut a_spaces = Vec::new();
    let mut b_spaces = Vec::new();
    for t in 0..max_two {
        let ka = kernel(shifted(&ca, t), n);
        if !ka.is_empty() {
            a_spaces.push((t, shifted(&ca, t)));
        }
        let kb = kernel(shifted(&cb, t), n);
        if !kb.is_empty() {
            b_spaces.push((t, shifted(&cb, t)));
        }
    }
    let mut complex_parts = Vec::new();
    let mut total = 0;
    for (tp, ma) in &a_spaces {
        for (tq, mb) in &b_spaces {
            let mut stacked = ma.clone();
            stacked.extend(mb.iter().cloned());
            let k = kernel(stacked, n);
            if !k.is_empty() {
                total += k.len();
                complex_parts.push((*tp, *tq, k));
            }
        }
    }
    if total != n {
        return Err(IsotypicError::Incomplete { found: total, dim: n });
    }
    let mut out: Vec<IsotypicComponent> = Vec::new();
    for (tp, tq, vecs) in complex_parts {
        let label = IsotypicLabel::new(tp, tq);
        if out.iter().any(|c| c.label == label) {
            continue;
        }
        let mut rows = Vec::new();
        for v in &vecs {
            rows.push(v.iter().map(|z| z.re.clone()).collect::<Vec<Q>>());
            rows.push(v.iter().map(|z| z.im.clone()).collect::<Vec<Q>>());
        }
        let sub = Subspace::span(rows, n);
        out.push(IsotypicComponent { label, basis: sub.basis });
    }
    out.sort_by_key(|c| c.label);
    Ok(out)
}

/// Projectors onto the components along the others (matrices acting on columns).
pub fn projectors(components: &[IsotypicComponent], n: usize) -> Vec<Mat<Q>> {
    let mut basis_cols: Vec<Vec<Q>> = Vec::new();
    let mut ranges = Vec::new();
    for c in components {
        let start = basis_cols.len();
        basis_cols.extend(c.basis.iter().cloned());
        ranges.push(start..basis_cols.len());
    }
    let b: Mat<Q> = (0..n).map(|i| basis_cols.iter().map(|v| v[i].clone()).collect()).collect();
    let binv = crate::linalg::inverse(&b).expect("components span the module");
    ranges
        .into_iter()
        .map(|r| {
            let mut d: Mat<Q> = vec![vec![q(0); n]; n];
            for i in r {
                d[i][i] = q(1);
            }
            mat_mul(&mat_mul(&b, &d, n), &binv, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{rep_adjoint, rep_on_ext, rep_on_w};
    use crate::linalg::identity;

    fn labels(c: &[IsotypicComponent]) -> Vec<(String, usize)> {
        c.iter().map(|x| (x.label.to_string(), x.basis.len())).collect()
    }

    #[test]
    fn vector_representation() {
        let c = isotypic_decompose(&rep_on_w(), false).unwrap();
        assert_eq!(labels(&c), vec![("(1/2,1/2)".to_string(), 4)]);
    }

    #[test]
    fn bivectors_and_adjoint() {
        let c = isotypic_decompose(&rep_on_ext(2), false).unwrap();
        assert_eq!(labels(&c), vec![("(1,0)⊕(0,1)".to_string(), 6)]);
        let c = isotypic_decompose(&rep_adjoint(), false).unwrap();
        assert_eq!(labels(&c), vec![("(1,0)⊕(0,1)".to_string(), 6)]);
        for k in [0, 4] {
            let c = isotypic_decompose(&rep_on_ext(k), false).unwrap();
            assert_eq!(labels(&c), vec![("(0,0)".to_string(), 1)]);
        }
    }

    #[test]
    fn orientation_does_not_matter() {
        let reps = rep_on_ext(3);
        let a = isotypic_decompose(&reps, false).unwrap();
        let b = isotypic_decompose(&reps, true).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert!(Subspace::span(x.basis.clone(), 4).equals(&Subspace::span(y.basis.clone(), 4)));
        }
    }

    #[test]
    fn projectors_are_complete() {
        let reps = rep_on_w();
        let n = 4;
        let c = isotypic_decompose(&reps, false).unwrap();
        let ps = projectors(&c, n);
        let mut sum: Mat<Q> = vec![vec![q(0); n]; n];
        for p in &ps {
            assert_eq!(&mat_mul(p, p, n), p);
            for i in 0..n {
                for j in 0..n {
                    sum[i][j] += &p[i][j];
                }
            }
        }
        assert_eq!(sum, identity(n));
    }

    #[test]
    fn rejects_non_representation() {
        let mut reps = rep_on_w();
        reps[0] = reps[1].clone();
        assert!(matches!(isotypic_decompose(&reps, false), Err(IsotypicError::NotARepresentation(_))));
    }
}
