//! Exact scalars: rationals, polynomials and rational functions in the
//! coordinates `x⁰..x³`, and their Gaussian extensions.

mod complex;
mod parse;
mod poly;
mod ratfunc;

pub use complex::Complex;
pub use parse::ParseError;
pub use poly::{Mono, Poly, NVARS};
pub use ratfunc::Scalar;

use crate::field::Q;

/// Gaussian rationals.
pub type CQ = Complex<Q>;

/// Complexified rational functions.
pub type CScalar = Complex<Scalar>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qf, DiffRing, Field};

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(s("1/2") + s("1/3"), s("5/6"));
        assert_eq!(s("x0") * s("x0") / s("x0"), s("x0"));
        assert_eq!(s("x0*x1").partial(0), s("x1"));
        assert_eq!(s("x1^2").partial(1), s("2*x1"));
        assert_eq!(s("7/3").partial(2), Scalar::zero());
        assert_eq!(s("1/(1+x0)").partial(0), s("-1/(1+x0)^2"));
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = s("(x0^2 - x1^2)/(x0 + x1)");
        assert_eq!(a, s("x0 - x1"));
        assert!(a.is_polynomial());
        let b = s("(2*x0^2 - 1)/(3*x1)");
        assert_eq!(b.den(), &Poly::var(1));
        assert_eq!(b.to_string().parse::<Scalar>().unwrap(), b);
    }

    #[test]
    fn sums_with_coprime_denominators_stay_fast() {
        let a = s("(-4*x0*x1^2*x2*x3^2 + 1/3*x0*x1*x2^2*x3 - 1/2*x0*x1*x2)/(-4*x0^2*x1^2*x2^2 - 1/3*x0*x3 - 1/3*x1*x2*x3 + 1)");
        let b = s("3/2*x0^2*x1^2*x2 + x0*x2^2 + 3*x2^2*x3^2");
        let c = s("(4/3*x1^2*x3 - x1*x3^2)/(-3/2*x0*x2 - 3/2*x0*x3^2 + 1)");
        let sum = a.clone() + b.clone() + c.clone();
        assert_eq!(sum.clone() - c, a.clone() + b);
        let f = s("x0*x2 - x3 + 2");
        assert_eq!((a.clone() * f.clone()) / (f.clone() * f), a / s("x0*x2 - x3 + 2"));
    }

    #[test]
    fn display_round_trip() {
        for t in ["0", "-1/3", "x0^3 - 2*x1*x2 + 5", "(x0 + 1)/(x1^2 - x3)", "1/(1 + x0)"] {
            let v = s(t);
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{t}");
            assert_eq!(v.to_string(), v.to_string().parse::<Scalar>().unwrap().to_string());
        }
    }

    #[test]
    fn evaluation() {
        let v = s("(x0 + 1)/(x1 - 2)");
        assert_eq!(v.eval(&[q(1), q(4), q(0), q(0)]), Some(q(1)));
        assert_eq!(v.eval(&[q(1), q(2), q(0), q(0)]), None);
        assert_eq!(s("x2/2").eval(&[q(0), q(0), q(3), q(0)]), Some(qf(3, 2)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("x7".parse::<Scalar>(), Err(ParseError::UnknownVariable(_))));
        assert_eq!("1/0".parse::<Scalar>(), Err(ParseError::DivisionByZero));
        assert_eq!("(x0".parse::<Scalar>(), Err(ParseError::Eof));
    }
}
