use super::*;
use crate::clifford::MultiVector;
use crate::field::{q, Field, Q};
use crate::frames::{CDer, IsotypicLabel};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

#[test]
fn bracket_examples() {
    let a = LElement::<Q>::basis(1, 0);
    assert!(a.bracket(&a).is_zero());
    let r = LElement::<Q>::basis(0, 8).bracket(&LElement::basis(4, 0));
    assert_eq!(r, -LElement::basis(8, 0));
}

#[test]
fn leibniz_against_anchor() {
    let x = LElement::<Scalar>::from_block(2, &CDer::lifted(1).scale(&s("x0"))) + LElement::from_block(1, &CDer::generator(6));
    let y = LElement::<Scalar>::from_block(6, &CDer::generator(9).scale(&s("x1^2")));
    let f = s("x1 + 2*x0*x1");
    let lhs = x.bracket(&y.scale(&f));
    let rho_f = x.anchor(&MultiVector::scalar(f.clone()));
    let rhs = LElement::ext_mul(&rho_f, &y) + x.bracket(&y).scale(&f);
    assert_eq!(lhs, rhs);
}

#[test]
fn anchor_examples() {
    let d0 = LElement::<Scalar>::basis(0, 0);
    assert_eq!(d0.anchor(&MultiVector::scalar(s("x0"))), MultiVector::one());
    let x = LElement::<Q>::basis(2, 8);
    let th1 = MultiVector::<Q>::theta(1);
    let th3 = MultiVector::<Q>::theta(3);
    assert_eq!(x.anchor(&MultiVector::theta(2)), -th1.wedge(&th3));
}

#[test]
fn explicit_basis_element() {
    let th = |m: u8| MultiVector::<Q>::blade(m);
    let d = |g: usize| CDer::<Q>::generator(g);
    let th31 = MultiVector::<Q>::theta(3).wedge(&MultiVector::theta(1));
    let want = LElement::tensor(&th(0b0011), &d(5)) - LElement::tensor(&th(0b1100), &d(8)) - LElement::tensor(&th(0b0101), &d(6))
        + LElement::tensor(&th31, &d(9));
    let e = mi2_element(&[[1, 0, 0], [0, -1, 0], [0, 0, 0]], false);
    assert_eq!(e, want);
}

#[test]
fn ideal_ranks_and_anchor() {
    let basis = ideal_basis_explicit();
    assert_eq!(basis.len(), 10);
    for b in &basis {
        for i in 0..4 {
            assert!(b.anchor(&MultiVector::theta(i)).is_zero());
        }
    }
    let ideal = Ideal::standard();
    assert_eq!(ideal.ranks(), vec![0, 0, 10, 16, 6]);
    assert_eq!(ideal.quotient_ranks(), vec![11, 44, 56, 28, 5]);
}

#[test]
fn isotypic_construction_agrees() {
    let explicit = Subspace::span(ideal_basis_explicit().into_iter().map(|x| x.c).collect(), LDIM);
    let iso = Subspace::span(ideal_basis_isotypic().unwrap(), LDIM);
    assert_eq!(iso.dim(), 10);
    assert!(iso.equals(&explicit));
    let m2 = Subspace::span(anchor_kernel(2), LDIM);
    assert!(m2.contains_all(&explicit));
    assert!(m2.dim() > 10);
    let ideal = Ideal::standard();
    let labels = ideal.labels().unwrap();
    assert_eq!(labels[0], (2, vec![IsotypicLabel::new(4, 0)]));
    assert_eq!(labels[1], (3, vec![IsotypicLabel::new(3, 1)]));
    assert_eq!(labels[2], (4, vec![IsotypicLabel::new(2, 0)]));
}

#[test]
fn minkowski_is_mc() {
    let ideal = Ideal::standard();
    let x = x_mink::<Scalar>();
    assert!(mc_defect(&x, &ideal).unwrap().is_zero());
    let bad = x + LElement::from_block(2, &CDer::generator(4).scale(&s("x0")));
    assert!(!mc_defect(&bad, &ideal).unwrap().is_zero());
    assert!(matches!(mc_defect(&LElement::<Q>::basis(0, 4), &ideal), Err(GlaoidError::NotGradeOne)));
}

#[test]
fn reduction_kills_ideal() {
    let ideal = Ideal::standard();
    for b in ideal_basis_explicit() {
        assert!(ideal.reduce(&b).is_zero());
    }
    let x = LElement::<Q>::basis(3, 5);
    let r = ideal.reduce(&x);
    assert_eq!(ideal.reduce(&r), r);
    assert!(r.c.iter().enumerate().all(|(i, v)| Field::is_zero(v) || ideal.complement().contains(&i)));
    let _ = q(0);
}
