use proptest::prelude::*;

use glagr::clifford::MultiVector;
use glagr::field::{qf, DiffRing, Field, Q};
use glagr::frames::{CDer, NGEN};
use glagr::glaoid::LElement;
use glagr::scalar::{Poly, Scalar};
use glagr::suite::sampling::random_element;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qf(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((rational(), proptest::array::uniform4(0u16..=2)), 0..4)
        .prop_map(|terms| terms.into_iter().fold(Poly::zero(), |acc, (c, m)| &acc + &Poly::monomial(m, c)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| {
        let d = &d + &Poly::one();
        (!d.is_zero()).then(|| Scalar::new(n, d))
    })
}

fn multivector() -> impl Strategy<Value = MultiVector<Q>> {
    proptest::collection::vec((0u8..16, rational()), 0..6)
        .prop_map(|terms| terms.into_iter().fold(MultiVector::zero(), |acc, (m, c)| acc + MultiVector::blade_with(m, c)))
}

fn cder() -> impl Strategy<Value = CDer<Scalar>> {
    proptest::collection::vec((0..NGEN, poly()), 0..4).prop_map(|terms| {
        let mut d = CDer::<Scalar>::zero();
        for (g, p) in terms {
            d.c[g] = d.c[g].clone() + Scalar::poly(p);
        }
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        if !Field::is_zero(&b) {
            prop_assert_eq!(a.clone() / b.clone() * b.clone(), a.clone());
        }
    }

    #[test]
    fn gcd_finds_planted_factor(a in poly(), b in poly(), f in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !f.is_zero());
        let (af, bf) = (&a * &f, &b * &f);
        let g = Poly::gcd(&af, &bf);
        prop_assert!(af.div_exact(&g).is_some() && bf.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&f.monic()).is_some());
        prop_assert_eq!(g, (&Poly::gcd(&a, &b) * &f).monic());
    }

    #[test]
    fn derivative_is_leibniz(f in scalar(), g in scalar(), mu in 0usize..4) {
        let lhs = (f.clone() * g.clone()).partial(mu);
        let rhs = f.partial(mu) * g.clone() + f.clone() * g.partial(mu);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn clifford_product_is_associative(a in multivector(), b in multivector(), c in multivector()) {
        prop_assert_eq!(a.clmul(&b).clmul(&c), a.clmul(&b.clmul(&c)));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cder_bracket_satisfies_jacobi(a in cder(), b in cder(), c in cder()) {
        let j = a.bracket(&b.bracket(&c)) + b.bracket(&c.bracket(&a)) + c.bracket(&a.bracket(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn l_bracket_is_graded_antisymmetric(seed in any::<u64>(), j in 0usize..4, k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: LElement<Scalar> = random_element(&mut rng, j);
        let y = random_element(&mut rng, k);
        let sign = if j * k % 2 == 0 { Q::one() } else { -Q::one() };
        let yx = y.bracket(&x).map(|v| v.scale_q(&sign));
        prop_assert!((x.bracket(&y) + yx).is_zero());
    }
}
