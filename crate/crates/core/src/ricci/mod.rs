//! From a nondegenerate element of `E¹` to an affine connection: torsion,
//! conformal compatibility, the parallel metric and the Ricci tensor.
//!
//! Conventions: `x = Σ_μ θ_μ ⊗ (Σ_ν e[μ][ν] ∂̂_ν + ω_μ)`. The frame is
//! `X_μ = Σ_ν e[μ][ν] ∂_ν`, the coframe `θ^κ = Σ_γ E[γ][κ] dx^γ` with
//! `E = e⁻¹`, and `∇_{X_μ} θ^λ = Σ_κ M_μ[κ][λ] θ^κ` where `M_μ` is the
//! matrix of `ω_μ`. Christoffel symbols: `∇_{∂_β} ∂_γ = Γ^α_{βγ} ∂_α`.

use thiserror::Error;

use crate::field::{q, DiffRing, Field, Q};
use crate::frames::CDer;
use crate::glaoid::{lidx, LElement};
use crate::linalg::{inverse, solve, Mat};
use crate::scalar::{Mono, Poly, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RicciError {
    #[error("x is degenerate")]
    Degenerate,
    #[error("connection is not conformal on the coframe at μ = {0}")]
    NotConformal(usize),
    #[error("∇ is not conformally compatible with the induced metric")]
    NotCompatible,
    #[error("no rational parallel representative: {0}")]
    NotExact(String),
}

pub type Tensor3 = Vec<Vec<Vec<Scalar>>>;
pub type Matrix = Vec<Vec<Scalar>>;

pub fn minkowski_eta() -> Matrix {
    (0..4).map(|i| (0..4).map(|j| if i != j { Scalar::zero() } else if i == 0 { Scalar::from_i64(-1) } else { Scalar::one() }).collect()).collect()
}

/// Affine data of a nondegenerate element.
#[derive(Clone, Debug)]
pub struct AffineData {
    pub e: Matrix,
    pub coframe: Matrix,
    /// `gamma[α][β][γ] = Γ^α_{βγ}`.
    pub gamma: Tensor3,
    /// The `i`-induced conformal representative `Σ η_{κλ} θ^κ θ^λ`.
    pub metric: Matrix,
}

fn zero3() -> Tensor3 {
    vec![vec![vec![Scalar::zero(); 4]; 4]; 4]
}

pub fn to_connection(x: &LElement<Scalar>) -> Result<AffineData, RicciError> {
    let e: Matrix = (0..4).map(|mu| (0..4).map(|nu| x.c[lidx(1 << mu, nu)].clone()).collect()).collect();
    let coframe = inverse(&e).ok_or(RicciError::Degenerate)?;
    let m: Vec<Matrix> = (0..4).map(|mu| x.block(1 << mu).matrix()).collect();
    let frame_apply = |mu: usize, f: &Scalar| (0..4).fold(Scalar::zero(), |acc, nu| acc + e[mu][nu].clone() * f.partial(nu));
    // N_μ[κ][α]: coefficient of θ^κ in ∇_{X_μ} dx^α
    let mut gamma = zero3();
    for mu in 0..4 {
        let mut n = vec![vec![Scalar::zero(); 4]; 4];
        for kappa in 0..4 {
            for alpha in 0..4 {
                let mut acc = frame_apply(mu, &e[kappa][alpha]);
                for lambda in 0..4 {
                    if !m[mu][kappa][lambda].is_zero() && !e[lambda][alpha].is_zero() {
                        acc = acc + e[lambda][alpha].clone() * m[mu][kappa][lambda].clone();
                    }
                }
                n[kappa][alpha] = acc;
            }
        }
        for alpha in 0..4 {
            for beta in 0..4 {
                if coframe[beta][mu].is_zero() {
                    continue;
                }
                for g in 0..4 {
                    let mut acc = Scalar::zero();
                    for kappa in 0..4 {
                        if !n[kappa][alpha].is_zero() && !coframe[g][kappa].is_zero() {
                            acc = acc + n[kappa][alpha].clone() * coframe[g][kappa].clone();
                        }
                    }
                    gamma[alpha][beta][g] = gamma[alpha][beta][g].clone() - coframe[beta][mu].clone() * acc;
                }
            }
        }
    }
    let metric = induced_metric(&coframe);
    Ok(AffineData { e, coframe, gamma, metric })
}

/// `g_{βγ} = Σ η_{κλ} E[β][κ] E[γ][λ]`.
pub fn induced_metric(coframe: &Matrix) -> Matrix {
    let eta = [-1, 1, 1, 1];
    (0..4)
        .map(|b| {
            (0..4)
                .map(|c| (0..4).fold(Scalar::zero(), |acc, k| acc + (coframe[b][k].clone() * coframe[c][k].clone()).scale_q(&q(eta[k]))))
                .collect()
        })
        .collect()
}

/// `T^α_{βγ} = Γ^α_{βγ} − Γ^α_{γβ}`.
pub fn torsion(c: &AffineData) -> Tensor3 {
    let mut t = zero3();
    for a in 0..4 {
        for b in 0..4 {
            for g in 0..4 {
                t[a][b][g] = c.gamma[a][b][g].clone() - c.gamma[a][g][b].clone();
            }
        }
    }
    t
}

pub fn is_zero3(t: &Tensor3) -> bool {
    t.iter().flatten().flatten().all(|v| v.is_zero())
}

pub fn is_zero2(t: &Matrix) -> bool {
    t.iter().flatten().all(|v| v.is_zero())
}

/// `(∇_β g)_{γδ}`.
pub fn nabla_metric(gamma: &Tensor3, g: &Matrix) -> Tensor3 {
    let mut out = zero3();
    for b in 0..4 {
        for c in 0..4 {
            for d in 0..4 {
                let mut acc = g[c][d].partial(b);
                for a in 0..4 {
                    if !gamma[a][b][c].is_zero() {
                        acc = acc - gamma[a][b][c].clone() * g[a][d].clone();
                    }
                    if !gamma[a][b][d].is_zero() {
                        acc = acc - gamma[a][b][d].clone() * g[c][a].clone();
                    }
                }
                out[b][c][d] = acc;
            }
        }
    }
    out
}

/// The 1-form `A` with `∇g = A ⊗ g`, if it exists.
pub fn conformal_one_form(c: &AffineData) -> Result<Vec<Scalar>, RicciError> {
    let ng = nabla_metric(&c.gamma, &c.metric);
    let ginv = inverse(&c.metric).ok_or(RicciError::Degenerate)?;
    let a: Vec<Scalar> = (0..4)
        .map(|b| {
            let mut acc = Scalar::zero();
            for i in 0..4 {
                for j in 0..4 {
                    if !ginv[i][j].is_zero() && !ng[b][i][j].is_zero() {
                        acc = acc + ginv[i][j].clone() * ng[b][i][j].clone();
                    }
                }
            }
            acc.scale_q(&crate::field::qf(1, 4))
        })
        .collect();
    for b in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                if ng[b][i][j] != a[b].clone() * c.metric[i][j].clone() {
                    return Err(RicciError::NotCompatible);
                }
            }
        }
    }
    Ok(a)
}

/// Split `polys` into pairwise coprime monic non-constant factors.
fn coprime_base(polys: Vec<Poly>) -> Vec<Poly> {
    let mut base: Vec<Poly> = Vec::new();
    for p in polys {
        let mut rest = p.monic();
        let mut i = 0;
        while i < base.len() && !rest.is_constant() {
            let g = Poly::gcd(&rest, &base[i]);
            if g.is_constant() {
                i += 1;
                continue;
            }
            let b = base.remove(i);
            let b_rest = b.div_exact(&g).expect("gcd divides").monic();
            rest = rest.div_exact(&g).expect("gcd divides").monic();
            base.push(g.monic());
            if !b_rest.is_constant() {
                base.push(b_rest);
            }
            i = 0;
        }
        if !rest.is_constant() {
            base.push(rest);
        }
    }
    base.sort_by_key(|p| format!("{p}"));
    base.dedup();
    base
}

/// A rational `φ` with `dφ = −φ A`, as `φ = Π f^{m_f}` over a coprime base of
/// the denominators of `A`.
pub fn rational_potential(a: &[Scalar]) -> Result<Scalar, RicciError> {
    if a.iter().all(|v| v.is_zero()) {
        return Ok(Scalar::one());
    }
    for i in 0..4 {
        for j in 0..i {
            if a[i].partial(j) != a[j].partial(i) {
                return Err(RicciError::NotExact("the conformal 1-form is not closed".into()));
            }
        }
    }
    let base = coprime_base(a.iter().filter(|v| !v.den().is_constant()).map(|v| v.den().clone()).collect());
    if base.is_empty() {
        return Err(RicciError::NotExact("polynomial 1-form has no rational potential".into()));
    }
    let d = base.iter().fold(Poly::one(), |acc, f| &acc * f);
    // Σ_f m_f ∂_β f · D/f = −A_β D for every β, coefficientwise.
    let cols: Vec<Vec<Poly>> = base.iter().map(|f| { let cof = d.div_exact(f).expect("factor"); (0..4).map(|b| &f.partial(b) * &cof).collect() }).collect();
    let mut rhs_polys = Vec::new();
    for (b, ab) in a.iter().enumerate() {
        let prod = ab.clone() * Scalar::poly(d.clone());
        if !prod.is_polynomial() {
            return Err(RicciError::NotExact(format!("component {b} has a pole outside the base")));
        }
        rhs_polys.push(prod.num().scale(&q(-1)));
    }
    let mut monos: Vec<(usize, Mono)> = Vec::new();
    for b in 0..4 {
        for p in cols.iter().map(|c| &c[b]).chain(std::iter::once(&rhs_polys[b])) {
            for (m, _) in p.terms() {
                if !monos.contains(&(b, *m)) {
                    monos.push((b, *m));
                }
            }
        }
    }
    let coeff = |p: &Poly, m: &Mono| p.terms().find(|(k, _)| *k == m).map(|(_, v)| v.clone()).unwrap_or_else(|| q(0));
    let mat: Mat<Q> = monos.iter().map(|(b, m)| cols.iter().map(|c| coeff(&c[*b], m)).collect()).collect();
    let rhs: Vec<Q> = monos.iter().map(|(b, m)| coeff(&rhs_polys[*b], m)).collect();
    let m = solve(&mat, &rhs, base.len()).ok_or_else(|| RicciError::NotExact("no logarithmic potential".into()))?;
    let mut phi = Scalar::one();
    for (f, e) in base.iter().zip(&m) {
        if !e.is_integer() {
            return Err(RicciError::NotExact(format!("non-integer exponent {e}")));
        }
        let k: i64 = e.to_integer().try_into().map_err(|_| RicciError::NotExact("exponent too large".into()))?;
        let fs = Scalar::poly(f.clone());
        let pw = fs.pow(k.unsigned_abs() as u32);
        phi = if k >= 0 { phi * pw } else { phi / pw };
    }
    Ok(phi)
}

/// The parallel representative `φ g`, normalized so that `φ = 1` at the
/// origin (equivalently `g(X₀, X₀) = −1` there).
pub fn parallel_metric(c: &AffineData) -> Result<(Scalar, Matrix), RicciError> {
    let a = conformal_one_form(c)?;
    let phi = rational_potential(&a)?;
    let at0 = phi.eval(&[q(0), q(0), q(0), q(0)]).ok_or_else(|| RicciError::NotExact("potential is singular at the origin".into()))?;
    if Field::is_zero(&at0) {
        return Err(RicciError::NotExact("potential vanishes at the origin".into()));
    }
    let phi = phi.scale_q(&(q(1) / num_traits::Signed::abs(&at0)));
    let g: Matrix = c.metric.iter().map(|r| r.iter().map(|v| v.clone() * phi.clone()).collect()).collect();
    if !is_zero3(&nabla_metric(&c.gamma, &g)) {
        return Err(RicciError::NotExact("rescaled metric is not parallel".into()));
    }
    Ok((phi, g))
}

/// `R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}`
/// and `Ric_{σν} = R^ρ_{σρν}`.
pub fn ricci_from_gamma(gamma: &Tensor3) -> Matrix {
    let mut ric = vec![vec![Scalar::zero(); 4]; 4];
    for s in 0..4 {
        for n in 0..4 {
            let mut acc = Scalar::zero();
            for r in 0..4 {
                // μ = ρ
                acc = acc + gamma[r][n][s].partial(r) - gamma[r][r][s].partial(n);
                for l in 0..4 {
                    if !gamma[r][r][l].is_zero() && !gamma[l][n][s].is_zero() {
                        acc = acc + gamma[r][r][l].clone() * gamma[l][n][s].clone();
                    }
                    if !gamma[r][n][l].is_zero() && !gamma[l][r][s].is_zero() {
                        acc = acc - gamma[r][n][l].clone() * gamma[l][r][s].clone();
                    }
                }
            }
            ric[s][n] = acc;
        }
    }
    ric
}

pub fn ricci(c: &AffineData) -> Matrix {
    ricci_from_gamma(&c.gamma)
}

/// Levi-Civita symbols by the Koszul formula,
/// `Γ^α_{βγ} = ½ g^{αδ}(∂_β g_{δγ} + ∂_γ g_{δβ} − ∂_δ g_{βγ})`.
pub fn christoffel_from_metric(g: &Matrix) -> Result<Tensor3, RicciError> {
    let ginv = inverse(g).ok_or(RicciError::Degenerate)?;
    let mut out = zero3();
    let half = crate::field::qf(1, 2);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut acc = Scalar::zero();
                for d in 0..4 {
                    if ginv[a][d].is_zero() {
                        continue;
                    }
                    let k = g[d][c].partial(b) + g[d][b].partial(c) - g[b][c].partial(d);
                    if !k.is_zero() {
                        acc = acc + ginv[a][d].clone() * k;
                    }
                }
                out[a][b][c] = acc.scale_q(&half);
            }
        }
    }
    Ok(out)
}

/// The element `Σ_μ θ_μ ⊗ (X_μ + ω_μ)` for a coframe `E` and connection `Γ`
/// preserving the conformal class of the coframe metric.
pub fn element_from_connection(coframe: &Matrix, gamma: &Tensor3) -> Result<LElement<Scalar>, RicciError> {
    let e = inverse(coframe).ok_or(RicciError::Degenerate)?;
    let mut x = LElement::zero();
    for mu in 0..4 {
        let mut m = vec![vec![Scalar::zero(); 4]; 4];
        for kappa in 0..4 {
            for lambda in 0..4 {
                let mut acc = Scalar::zero();
                for b in 0..4 {
                    if e[mu][b].is_zero() {
                        continue;
                    }
                    let mut inner = Scalar::zero();
                    for g in 0..4 {
                        if !e[kappa][g].is_zero() {
                            inner = inner + coframe[g][lambda].partial(b) * e[kappa][g].clone();
                        }
                        for d in 0..4 {
                            if !gamma[g][b][d].is_zero() && !coframe[g][lambda].is_zero() && !e[kappa][d].is_zero() {
                                inner = inner - coframe[g][lambda].clone() * gamma[g][b][d].clone() * e[kappa][d].clone();
                            }
                        }
                    }
                    acc = acc + e[mu][b].clone() * inner;
                }
                m[kappa][lambda] = acc;
            }
        }
        let d = CDer::from_matrix(&e[mu], &m).ok_or(RicciError::NotConformal(mu))?;
        x = x + LElement::from_block(1 << mu, &d);
    }
    Ok(x)
}

/// `H (dx⁰)² + 2 dx⁰dx³ + (dx¹)² + (dx²)²`.
pub fn ppwave_metric(h: &Scalar) -> Matrix {
    let mut g = vec![vec![Scalar::zero(); 4]; 4];
    g[0][0] = h.clone();
    g[0][3] = Scalar::one();
    g[3][0] = Scalar::one();
    g[1][1] = Scalar::one();
    g[2][2] = Scalar::one();
    g
}

/// Orthonormal coframe `θ⁰ = ((1−H)/2)dx⁰ − dx³`, `θ³ = ((1+H)/2)dx⁰ + dx³`,
/// `θ¹ = dx¹`, `θ² = dx²`, as `E[γ][κ]`.
pub fn ppwave_coframe(h: &Scalar) -> Matrix {
    let half = crate::field::qf(1, 2);
    let mut e = vec![vec![Scalar::zero(); 4]; 4];
    e[0][0] = (Scalar::one() - h.clone()).scale_q(&half);
    e[3][0] = Scalar::from_i64(-1);
    e[0][3] = (Scalar::one() + h.clone()).scale_q(&half);
    e[3][3] = Scalar::one();
    e[1][1] = Scalar::one();
    e[2][2] = Scalar::one();
    e
}

/// The pp-wave element: the coframe above with its Levi-Civita connection.
pub fn ppwave_element(h: &Scalar) -> Result<LElement<Scalar>, RicciError> {
    let gamma = christoffel_from_metric(&ppwave_metric(h))?;
    element_from_connection(&ppwave_coframe(h), &gamma)
}

/// Minkowski frame scaled by `1/Ω` (coframe `Ω dx^μ`) with the flat
/// connection.
pub fn rescaled_minkowski(omega: &Scalar) -> Result<LElement<Scalar>, RicciError> {
    let coframe: Matrix = (0..4).map(|i| (0..4).map(|j| if i == j { omega.clone() } else { Scalar::zero() }).collect()).collect();
    element_from_connection(&coframe, &zero3())
}

/// Summary of the checks on one background.
#[derive(Clone, Debug)]
pub struct BackgroundReport {
    pub mc_defect_zero: bool,
    pub torsion_zero: bool,
    pub compatible: bool,
    pub parallel: Option<Matrix>,
    pub ricci: Matrix,
}

impl BackgroundReport {
    pub fn ricci_zero(&self) -> bool {
        is_zero2(&self.ricci)
    }
}

pub fn analyze(x: &LElement<Scalar>, ideal: &crate::glaoid::Ideal) -> Result<BackgroundReport, RicciError> {
    let defect = crate::glaoid::mc_defect(x, ideal).map_err(|_| RicciError::Degenerate)?;
    let c = to_connection(x)?;
    let compatible = conformal_one_form(&c).is_ok();
    let parallel = parallel_metric(&c).ok().map(|(_, g)| g);
    Ok(BackgroundReport {
        mc_defect_zero: defect.is_zero(),
        torsion_zero: is_zero3(&torsion(&c)),
        compatible,
        parallel,
        ricci: ricci(&c),
    })
}

pub fn format_tensor2(m: &Matrix) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for (i, r) in m.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            if !v.is_zero() {
                out.push((i, j, v.to_string()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests;
