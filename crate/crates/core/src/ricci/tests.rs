use super::*;
use crate::field::qf;
use crate::glaoid::{x_mink, Ideal};
use crate::frames::CDer;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn mink_scalar() -> LElement<Scalar> {
    let xm: LElement<Q> = x_mink();
    LElement { c: xm.c.iter().map(|v| Scalar::constant(v.clone())).collect() }
}

#[test]
fn minkowski_is_flat() {
    let ideal = Ideal::standard();
    let r = analyze(&mink_scalar(), &ideal).unwrap();
    assert!(r.mc_defect_zero && r.torsion_zero && r.compatible && r.ricci_zero());
    assert_eq!(r.parallel.unwrap(), minkowski_eta());
}

#[test]
fn connection_round_trip() {
    let h = s("x1^2 - 3*x2*x0 + 1/2");
    let gamma = christoffel_from_metric(&ppwave_metric(&h)).unwrap();
    let x = element_from_connection(&ppwave_coframe(&h), &gamma).unwrap();
    let c = to_connection(&x).unwrap();
    assert_eq!(c.gamma, gamma);
    assert_eq!(c.metric, ppwave_metric(&h));
}

#[test]
fn coframe_metric_is_ppwave() {
    let h = s("x1*x2 + x0^3");
    assert_eq!(induced_metric(&ppwave_coframe(&h)), ppwave_metric(&h));
}

#[test]
fn harmonic_ppwave_is_mc_and_ricci_flat() {
    let ideal = Ideal::standard();
    for h in ["x1^2 - x2^2", "x1*x2*(x0^2 + 1)", "x0^5*x1 - 7*x2"] {
        let x = ppwave_element(&s(h)).unwrap();
        let r = analyze(&x, &ideal).unwrap();
        assert!(r.mc_defect_zero, "{h}");
        assert!(r.torsion_zero && r.compatible && r.ricci_zero(), "{h}");
        assert_eq!(r.parallel.unwrap(), ppwave_metric(&s(h)), "{h}");
    }
}

#[test]
fn ppwave_ricci_oracle() {
    // Ric = -1/2 (∂₁² + ∂₂²)H (dx⁰)² for these metrics
    let ideal = Ideal::standard();
    for h in ["x1^2 + x2^2", "x1^4 + x0*x2^2"] {
        let hs = s(h);
        let lap = hs.partial(1).partial(1) + hs.partial(2).partial(2);
        let x = ppwave_element(&hs).unwrap();
        let r = analyze(&x, &ideal).unwrap();
        assert!(!r.mc_defect_zero, "{h}");
        assert!(r.torsion_zero);
        let mut expect = vec![vec![Scalar::zero(); 4]; 4];
        expect[0][0] = lap.scale_q(&qf(-1, 2));
        assert_eq!(r.ricci, expect, "{h}");
    }
}

#[test]
fn koszul_ricci_matches_element_ricci() {
    let g = ppwave_metric(&s("x1^2*x0 + x2"));
    let direct = ricci_from_gamma(&christoffel_from_metric(&g).unwrap());
    let x = ppwave_element(&s("x1^2*x0 + x2")).unwrap();
    assert_eq!(ricci(&to_connection(&x).unwrap()), direct);
}

#[test]
fn rescaled_frame_is_compatible_not_parallel() {
    let omega = s("1 + x1");
    let x = rescaled_minkowski(&omega).unwrap();
    let c = to_connection(&x).unwrap();
    assert!(!is_zero3(&nabla_metric(&c.gamma, &c.metric)));
    let a = conformal_one_form(&c).unwrap();
    assert!(a.iter().any(|v| !v.is_zero()));
    assert!(is_zero3(&torsion(&c)));
}

#[test]
fn conformal_rescale_recovers_flat_metric() {
    let ideal = Ideal::standard();
    for om in ["1 + x1^2", "(1 + x1^2)*(2 + x0)/(3 + x2^2)"] {
        let x = rescaled_minkowski(&s(om)).unwrap();
        let r = analyze(&x, &ideal).unwrap();
        assert!(r.mc_defect_zero, "{om}");
        assert!(r.ricci_zero());
        let g = r.parallel.expect("parallel metric");
        let at0 = s(om).eval(&[q(0), q(0), q(0), q(0)]).unwrap();
        let k = at0.clone() * at0;
        let want: Matrix = minkowski_eta().iter().map(|row| row.iter().map(|v| v.scale_q(&k)).collect()).collect();
        assert_eq!(g, want, "{om}");
    }
}

#[test]
fn vertical_perturbation_has_torsion() {
    let ideal = Ideal::standard();
    let mut pert = CDer::<Scalar>::zero();
    pert.c[8] = Scalar::one();
    let x = mink_scalar() + LElement::from_block(1 << 1, &pert);
    let r = analyze(&x, &ideal).unwrap();
    assert!(!r.mc_defect_zero);
    assert!(!r.torsion_zero);
}

#[test]
fn torsion_matches_anchor_of_bracket() {
    let mut pert = CDer::<Scalar>::zero();
    pert.c[8] = s("x0 + 1");
    pert.c[5] = s("x2");
    let x = mink_scalar() + LElement::from_block(1 << 2, &pert);
    let t = torsion(&to_connection(&x).unwrap());
    let xx = x.bracket(&x);
    // anchor components of [x,x] vanish exactly when the torsion does
    let anchor_zero = (0..16u8).filter(|m| m.count_ones() == 2).all(|m| (0..4).all(|nu| xx.block(m).c[nu].is_zero()));
    assert_eq!(anchor_zero, is_zero3(&t));
    assert!(!anchor_zero);
    let x = ppwave_element(&s("x1^3")).unwrap();
    let xx = x.bracket(&x);
    assert!((0..16u8).all(|m| (0..4).all(|nu| xx.block(m).c[nu].is_zero())));
}

#[test]
fn degenerate_rejected() {
    assert_eq!(to_connection(&LElement::zero()).unwrap_err(), RicciError::Degenerate);
}

#[test]
fn non_closed_form_has_no_potential() {
    let a = vec![s("x1"), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    assert!(matches!(rational_potential(&a), Err(RicciError::NotExact(_))));
    let a = vec![s("1/(x0 + 1)").scale_q(&qf(1, 2)), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    assert!(matches!(rational_potential(&a), Err(RicciError::NotExact(_))));
    let a = vec![s("-2/(x0 + 1)"), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    assert_eq!(rational_potential(&a).unwrap(), s("(x0+1)^2"));
}

#[test]
fn tensor_formatting() {
    let g = ppwave_metric(&s("x1"));
    let f = format_tensor2(&g);
    assert_eq!(f.len(), 5);
    assert_eq!(f[0], (0, 0, "x1".to_string()));
}
