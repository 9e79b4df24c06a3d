//! Coefficient fields.
//!
//! Everything above this module is generic over [`Scalar`]. The symbolic
//! field is [`ScalarQ`] (rational functions in `q`); specializing `q` to a
//! rational number is done by running the same code over [`BigRational`].

mod ratfunc;
mod upoly;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use ratfunc::ScalarQ;
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("q must be nonzero")]
    ZeroParameter,
}

/// A field of characteristic zero with exact arithmetic.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Result<Self, ScalarError>;

    fn try_div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self.times(&o.inverse()?))
    }

    /// Integer power; negative exponents need an invertible base.
    fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(&base);
        }
        Ok(acc)
    }
}

/// The four field operations of `scalar_arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith<K: Scalar>(a: &K, b: &K, op: ArithOp) -> Result<K, ScalarError> {
    Ok(match op {
        ArithOp::Add => a.plus(b),
        ArithOp::Sub => a.minus(b),
        ArithOp::Mul => a.times(b),
        ArithOp::Div => a.try_div(b)?,
    })
}

pub fn scalar_specialize(a: &ScalarQ, q0: &BigRational) -> Result<BigRational, ScalarError> {
    a.specialize(q0)
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn plus(&self, o: &Self) -> Self {
        self + o
    }

    fn minus(&self, o: &Self) -> Self {
        self - o
    }

    fn times(&self, o: &Self) -> Self {
        self * o
    }

    fn negate(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Result<Self, ScalarError> {
        if Zero::is_zero(self) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.recip())
    }
}

/// True when a rendering of `k` can be used as a product factor without
/// parentheses.
pub fn renders_simple<K: Scalar>(k: &K) -> bool {
    let s = k.to_string();
    let body = s.strip_prefix('-').unwrap_or(&s);
    !body.contains([' ', '/', '(', '+'])
}

/// Parses a decimal rational `a` or `a/b`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Renders a rational as `a` or `a/b` with the sign on the numerator.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.numer().is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = UPoly> {
        prop::collection::vec(-5i64..=5, 0..4).prop_map(|cs| UPoly::from_i64s(&cs))
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
            ScalarQ::from_parts(n, d).ok()
        })
    }

    proptest! {
        #[test]
        fn specialization_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            for q0 in [BigRational::from_integer(2.into()), BigRational::new(3.into(), 2.into())] {
                let ab = a.times(&b);
                if let (Ok(x), Ok(y)) = (a.specialize(&q0), b.specialize(&q0)) {
                    prop_assert_eq!(ab.specialize(&q0).unwrap(), x * y);
                }
            }
        }

        #[test]
        fn normalization_is_idempotent(a in arb_scalar()) {
            let again = ScalarQ::from_parts(a.numerator().clone(), a.denominator().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.plus(&b), b.plus(&a));
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
            prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
            prop_assert!(a.minus(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.times(&a.inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn arith_dispatch() {
        let q = ScalarQ::q();
        assert_eq!(
            scalar_arith(&q, &q, ArithOp::Div).unwrap(),
            ScalarQ::one()
        );
        assert_eq!(
            scalar_arith(&q, &ScalarQ::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2"), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(BigRational::from_integer((-4).into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&BigRational::new((-3).into(), 2.into())), "-3/2");
    }
}
