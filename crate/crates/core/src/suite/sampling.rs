//! Seeded random instances for the identity checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::clifford::{grade, MultiVector};
use crate::field::{q, Field, Q};
use crate::frames::NGEN;
use crate::glaoid::{lidx, LElement};
use crate::hyperbolic::random_poly;
use crate::scalar::Scalar;

/// A homogeneous element of `L^k` with a few polynomial coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, k: usize) -> LElement<Scalar> {
    let masks: Vec<u8> = (0..16u8).filter(|m| grade(*m) == k).collect();
    let mut x = LElement::<Scalar>::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mask = masks[rng.gen_range(0..masks.len())];
        let g = rng.gen_range(0..NGEN);
        let i = lidx(mask, g);
        x.c[i] = x.c[i].clone() + random_poly(rng);
    }
    x
}

/// A random element of `∧W` with polynomial coefficients.
pub fn random_form(rng: &mut ChaCha8Rng) -> MultiVector<Scalar> {
    let mut out = MultiVector::zero();
    for _ in 0..rng.gen_range(1..=3) {
        out = out + MultiVector::blade_with(rng.gen_range(0..16u8), random_poly(rng));
    }
    out
}

/// Random rational combination of vectors with polynomial coefficients.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Q>]) -> LElement<Scalar> {
    let mut x = LElement::<Scalar>::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let b = &basis[rng.gen_range(0..basis.len())];
        let f = random_poly(rng);
        for (o, v) in x.c.iter_mut().zip(b) {
            if !Field::is_zero(v) {
                *o = o.clone() + f.scale_q(v);
            }
        }
    }
    x
}

/// A proper orthochronous Lorentz matrix with rational entries, composed of
/// Pythagorean rotations and boosts, `Λ[ν][μ]`.
pub fn random_lorentz(rng: &mut ChaCha8Rng) -> [[Q; 4]; 4] {
    let mut l: [[Q; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { q(1) } else { q(0) }));
    for _ in 0..rng.gen_range(1..=3) {
        let (a, b) = [(1, 2), (2, 3), (3, 1), (0, 1), (0, 2), (0, 3)][rng.gen_range(0..6)];
        let t = Q::new(rng.gen_range(-4..=4).into(), rng.gen_range(5..=9).into());
        let one = q(1);
        let t2 = &t * &t;
        let (c, s, boost) = if a == 0 {
            ((&one + &t2) / (&one - &t2), (q(2) * &t) / (&one - &t2), true)
        } else {
            ((&one - &t2) / (&one + &t2), (q(2) * &t) / (&one + &t2), false)
        };
        let mut r: [[Q; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { q(1) } else { q(0) }));
        r[a][a] = c.clone();
        r[b][b] = c;
        r[a][b] = if boost { s.clone() } else { -s.clone() };
        r[b][a] = s;
        l = std::array::from_fn(|i| std::array::from_fn(|j| (0..4).fold(q(0), |acc, k| acc + &l[i][k] * &r[k][j])));
    }
    l
}

/// The generators `e_μ = Σ_ν Λ[ν][μ] θ_ν`.
pub fn transformed_generators(l: &[[Q; 4]; 4]) -> [MultiVector<Q>; 4] {
    std::array::from_fn(|mu| MultiVector::vector(&std::array::from_fn(|nu| l[nu][mu].clone())))
}
