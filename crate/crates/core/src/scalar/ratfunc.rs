use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use super::{Scalar, ScalarError};

/// An element of `Q(q)`: a reduced fraction of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[q]` (so also no common integer
/// content), `den` has a positive leading coefficient, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: UPoly,
    den: UPoly,
}

impl ScalarQ {
    /// The deformation parameter `q`.
    pub fn q() -> Self {
        ScalarQ {
            num: UPoly::monomial(BigInt::one(), 1),
            den: UPoly::one(),
        }
    }

    pub fn from_poly(num: UPoly) -> Self {
        ScalarQ {
            num,
            den: UPoly::one(),
        }
    }

    /// `num / den`, reduced. Fails when `den` is zero.
    pub fn from_parts(num: UPoly, den: UPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(
            UPoly::constant(r.numer().clone()),
            UPoly::constant(r.denom().clone()),
        )
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return ScalarQ {
                num: UPoly::zero(),
                den: UPoly::one(),
            };
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else if den.is_monomial() {
            // gcd with c*q^k: integer content and the common power of q
            let k = den.valuation().min(num.valuation());
            let c = den.leading().unwrap().abs().gcd(&num.content());
            let num = num.shift_down(k).div_exact_int(&c);
            let den = den.shift_down(k).div_exact_int(&c);
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.leading().is_some_and(Signed::is_negative) {
            ScalarQ {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            ScalarQ { num, den }
        }
    }

    /// Exact value at `q = q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if Zero::is_zero(q0) {
            return Err(ScalarError::ZeroParameter);
        }
        let d = self.den.eval(q0);
        if Zero::is_zero(&d) {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Renders the numerator, parenthesized when it has more
    /// than one term.
    fn fmt_part(p: &UPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms > 1 {
            write!(f, "({p})")
        } else {
            write!(f, "{p}")
        }
    }

    /// True when the rendering is a single signed term (no `+`/`-` inside and
    /// no division), so it can be used as a factor without parentheses.
    pub fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl Scalar for ScalarQ {
    fn zero() -> Self {
        ScalarQ {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    fn one() -> Self {
        ScalarQ {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    fn from_int(v: i64) -> Self {
        Self::from_poly(UPoly::constant(BigInt::from(v)))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        Self::from_parts(
            UPoly::constant(BigInt::from(num)),
            UPoly::constant(BigInt::from(den)),
        )
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn plus(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&o.den))
    }

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    fn times(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn negate(&self) -> Self {
        ScalarQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        Self::fmt_part(&self.num, f)?;
        // `1/2*q` would read back as `q/2`
        let den = self.den.to_string();
        if den.contains(['*', ' ', '-']) {
            write!(f, "/({den})")
        } else {
            write!(f, "/{den}")
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ({self})")
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        self.plus(o)
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        self.minus(o)
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        self.times(o)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> ScalarQ {
        ScalarQ::from_parts(UPoly::from_i64s(num), UPoly::from_i64s(den)).unwrap()
    }

    #[test]
    fn q_times_q() {
        let q = ScalarQ::q();
        assert_eq!(q.times(&q), rf(&[0, 0, 1], &[1]));
    }

    #[test]
    fn q_minus_inverse_plus_q() {
        // (q^2 - 1)/q + q = (2q^2 - 1)/q
        let a = rf(&[-1, 0, 1], &[0, 1]);
        assert_eq!(a.plus(&ScalarQ::q()), rf(&[-1, 0, 2], &[0, 1]));
        assert_eq!(a.plus(&ScalarQ::q()).to_string(), "(2*q^2 - 1)/q");
    }

    #[test]
    fn one_minus_one_is_canonical_zero() {
        let z = ScalarQ::one().minus(&ScalarQ::one());
        assert!(z.is_zero());
        assert!(z.denominator().is_one());
        assert_eq!(z, ScalarQ::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(ScalarQ::q().try_div(&ScalarQ::zero()), Err(ScalarError::DivisionByZero));
        assert!(ScalarQ::from_parts(UPoly::one(), UPoly::zero()).is_err());
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = rf(&[2, 2], &[-4, -4]);
        assert_eq!(a, rf(&[-1], &[2]));
        assert!(a.denominator().leading().unwrap().is_positive());
    }

    #[test]
    fn specialization_examples() {
        let a = rf(&[-1, 0, 1], &[0, 1]);
        let two = BigRational::from_integer(2.into());
        assert_eq!(
            a.specialize(&two).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        let five = BigRational::from_integer(5.into());
        assert!(Zero::is_zero(&ScalarQ::zero().specialize(&five).unwrap()));
        let one: BigRational = One::one();
        assert!(One::is_one(&ScalarQ::q().specialize(&one).unwrap()));
    }

    #[test]
    fn pole_is_reported() {
        let a = rf(&[1], &[-1, 1]);
        assert!(matches!(
            a.specialize(&<BigRational as One>::one()),
            Err(ScalarError::Pole(_))
        ));
    }
}
