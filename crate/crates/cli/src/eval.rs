//! Evaluation of expression trees into normal forms.
//!
//! Values live in the smallest structure that holds them: scalars, polynomials,
//! elements of `GL_q = M_q[D⁻¹]`, or left fractions over a declared Ore set.
//! Inverses exist only for nonzero scalars, `D`, and products of declared Ore
//! generators.

use std::fmt;

use qflag_core::orelocal::{OreEngine, OreFraction};
use qflag_core::qalgebra::{NcPoly, QMatrixAlgebra};
use qflag_core::qminor::GlElement;
use qflag_core::scalar::Scalar;
use thiserror::Error;

use crate::expr::{Expr, MulOp, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("inverse of undeclared element `{0}`")]
    Undeclared(String),
    #[error("division by a non-scalar `{0}`")]
    NonScalarDivisor(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] qflag_core::Error),
}

impl From<qflag_core::scalar::ScalarError> for EvalError {
    fn from(e: qflag_core::scalar::ScalarError) -> Self {
        EvalError::Core(e.into())
    }
}

pub type EvalResult<T> = std::result::Result<T, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<K: Scalar> {
    Scalar(K),
    Poly(NcPoly<K>),
    Gl(GlElement<K>),
    Frac(OreFraction<K>),
}

/// The algebra and, optionally, the Ore set whose generators may be inverted.
pub struct Evaluator<'e, 'a, K: Scalar> {
    alg: &'a QMatrixAlgebra<K>,
    engine: Option<&'e OreEngine<'a, K>>,
}

/// A value printed in normal form; fractions use the Ore set labels.
pub struct Rendered<'v, 'e, 'a, K: Scalar>(&'v Value<K>, &'v Evaluator<'e, 'a, K>);

impl<K: Scalar> fmt::Display for Rendered<'_, '_, '_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Gl(g) => write!(f, "{g}"),
            Value::Frac(x) => match self.1.engine {
                Some(e) => f.write_str(&x.render(e.set())),
                None => write!(f, "{}", x.num),
            },
        }
    }
}

impl<'e, 'a, K: Scalar> Evaluator<'e, 'a, K> {
    pub fn new(alg: &'a QMatrixAlgebra<K>, engine: Option<&'e OreEngine<'a, K>>) -> Self {
        Evaluator { alg, engine }
    }

    pub fn render<'v>(&'v self, v: &'v Value<K>) -> Rendered<'v, 'e, 'a, K> {
        Rendered(v, self)
    }

    pub fn eval(&self, e: &Expr) -> EvalResult<Value<K>> {
        let alg = self.alg;
        Ok(match e {
            Expr::Sum(items) => {
                let mut acc = Value::Scalar(K::zero());
                for (sign, x) in items {
                    let v = self.eval(x)?;
                    acc = match sign {
                        Sign::Plus => self.add(&acc, &v)?,
                        Sign::Minus => self.add(&acc, &self.neg(&v))?,
                    };
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = Value::Scalar(K::one());
                for (op, x) in items {
                    let v = self.eval(x)?;
                    acc = match op {
                        MulOp::Mul => self.mul(&acc, &v)?,
                        MulOp::Div => {
                            let c = as_scalar(&v).ok_or_else(|| EvalError::NonScalarDivisor(x.to_string()))?;
                            self.scale(&acc, &c.inverse()?)
                        }
                    };
                }
                acc
            }
            Expr::Pow(b, k) => {
                let base = self.eval(b)?;
                let base = if *k < 0 { self.inverse(&base, b)? } else { base };
                let mut acc = Value::Scalar(K::one());
                for _ in 0..k.unsigned_abs() {
                    acc = self.mul(&acc, &base)?;
                }
                acc
            }
            Expr::Gen(i, j) => {
                alg.check_index(*i, *j)?;
                Value::Poly(alg.gen(*i, *j))
            }
            Expr::Det => Value::Poly(alg.qdet()),
            Expr::Minor(r, c) => {
                let spec = qflag_core::qminor::MinorSpec::new(r.clone(), c.clone())?;
                Value::Poly(alg.qminor(&spec)?)
            }
            Expr::Q => Value::Scalar(alg.q().clone()),
            Expr::Int(v) => {
                let v = i64::try_from(*v).map_err(|_| EvalError::Unsupported(format!("integer {v} is too large")))?;
                Value::Scalar(K::from_int(v))
            }
            Expr::Antipode(x) => match self.eval(x)? {
                Value::Scalar(c) => Value::Scalar(c),
                Value::Poly(p) => Value::Gl(alg.antipode(&p)),
                _ => return Err(EvalError::Unsupported(format!("antipode of `{x}` is only defined on polynomials"))),
            },
            Expr::Inv(x) => {
                let v = self.eval(x)?;
                self.inverse(&v, x)?
            }
        })
    }

    /// [`eval`](Self::eval) followed by [`simplify`](Self::simplify).
    pub fn normalize(&self, e: &Expr) -> EvalResult<Value<K>> {
        Ok(self.simplify(self.eval(e)?))
    }

    /// Cancels the longest prefix `s₁` of the denominator word with
    /// `r = s₁ p`: `(s₁ s₂)⁻¹ s₁ p = s₂⁻¹ p`. Polynomial results and constant
    /// numerators drop to the simpler variants.
    pub fn simplify(&self, v: Value<K>) -> Value<K> {
        let v = match (v, self.engine) {
            (Value::Frac(x), Some(e)) => {
                let cut = (1..=x.denom.len())
                    .rev()
                    .find_map(|k| e.left_divide(&x.num, &x.denom[..k]).ok().map(|p| (k, p)));
                match cut {
                    Some((k, p)) => Value::Frac(OreFraction::new(x.denom[k..].to_vec(), p)),
                    None => Value::Frac(x),
                }
            }
            (v, _) => v,
        };
        match &v {
            Value::Gl(g) if g.dpower == 0 => Value::Poly(g.numerator.clone()),
            Value::Frac(x) if x.denom.is_empty() => Value::Poly(x.num.clone()),
            _ => v,
        }
        .demote()
    }

    fn poly(&self, v: &Value<K>) -> Option<NcPoly<K>> {
        match v {
            Value::Scalar(c) => Some(self.alg.constant(c.clone())),
            Value::Poly(p) => Some(p.clone()),
            Value::Gl(g) if g.dpower == 0 => Some(g.numerator.clone()),
            Value::Frac(x) if x.denom.is_empty() => Some(x.num.clone()),
            _ => None,
        }
    }

    fn to_gl(&self, v: &Value<K>) -> EvalResult<GlElement<K>> {
        match v {
            Value::Gl(g) => Ok(g.clone()),
            other => self
                .poly(other)
                .map(GlElement::poly)
                .ok_or_else(|| EvalError::Unsupported("fractions over an Ore set do not mix with D^-1".into())),
        }
    }

    fn to_frac(&self, v: &Value<K>) -> EvalResult<OreFraction<K>> {
        match v {
            Value::Frac(x) => Ok(x.clone()),
            Value::Gl(g) if g.dpower > 0 => {
                // D is central: D^{-k} x = (D^k)^{-1} x
                let d = self.engine.and_then(|e| e.set().index_of(&self.alg.qdet()));
                match d {
                    Some(i) => Ok(OreFraction::new(vec![i; g.dpower as usize], g.numerator.clone())),
                    None => Err(EvalError::Undeclared("D".into())),
                }
            }
            other => Ok(OreFraction::poly(self.poly(other).expect("polynomial value"))),
        }
    }

    fn rank(&self, v: &Value<K>) -> u8 {
        match v {
            Value::Scalar(_) => 0,
            Value::Poly(_) => 1,
            Value::Gl(_) => 2,
            Value::Frac(_) => 3,
        }
    }

    fn engine(&self) -> EvalResult<&'e OreEngine<'a, K>> {
        self.engine
            .ok_or_else(|| EvalError::Unsupported("no Ore set declared".into()))
    }

    pub fn add(&self, x: &Value<K>, y: &Value<K>) -> EvalResult<Value<K>> {
        Ok(match self.rank(x).max(self.rank(y)) {
            0 => Value::Scalar(as_scalar(x).expect("scalar").plus(&as_scalar(y).expect("scalar"))),
            1 => Value::Poly(self.poly(x).expect("poly").add(&self.poly(y).expect("poly"))),
            2 => Value::Gl(self.alg.gl_add(&self.to_gl(x)?, &self.to_gl(y)?)),
            _ => Value::Frac(self.engine()?.fraction_add(&self.to_frac(x)?, &self.to_frac(y)?)?),
        })
    }

    pub fn mul(&self, x: &Value<K>, y: &Value<K>) -> EvalResult<Value<K>> {
        if let Some(c) = as_scalar(x) {
            return Ok(self.scale(y, &c));
        }
        if let Some(c) = as_scalar(y) {
            return Ok(self.scale(x, &c));
        }
        Ok(match self.rank(x).max(self.rank(y)) {
            0 | 1 => Value::Poly(self.alg.mul(&self.poly(x).expect("poly"), &self.poly(y).expect("poly"))),
            2 => Value::Gl(self.alg.gl_mul(&self.to_gl(x)?, &self.to_gl(y)?)),
            _ => Value::Frac(self.engine()?.fraction_multiply(&self.to_frac(x)?, &self.to_frac(y)?)?),
        })
    }

    pub fn scale(&self, v: &Value<K>, c: &K) -> Value<K> {
        match v {
            Value::Scalar(a) => Value::Scalar(a.times(c)),
            Value::Poly(p) => Value::Poly(p.scale(c)),
            Value::Gl(g) => Value::Gl(GlElement {
                numerator: g.numerator.scale(c),
                dpower: g.dpower,
            }),
            Value::Frac(x) => Value::Frac(x.scale(c)),
        }
    }

    pub fn neg(&self, v: &Value<K>) -> Value<K> {
        self.scale(v, &K::one().negate())
    }

    /// `v⁻¹` when `v` is a nonzero scalar, a power of `D`, or a product of
    /// declared Ore generators. `src` names `v` in errors.
    pub fn inverse(&self, v: &Value<K>, src: &Expr) -> EvalResult<Value<K>> {
        let undeclared = || EvalError::Undeclared(src.to_string());
        if let Some(c) = as_scalar(v) {
            return Ok(Value::Scalar(c.inverse()?));
        }
        match v {
            Value::Gl(g) => {
                // (c D^{-k})⁻¹ = c⁻¹ D^k
                let c = g.numerator.as_constant().ok_or_else(undeclared)?;
                Ok(Value::Poly(self.alg.qdet_pow(g.dpower).scale(&c.inverse()?)))
            }
            Value::Frac(x) => {
                // (s⁻¹ c)⁻¹ = c⁻¹ s
                let c = x.num.as_constant().ok_or_else(undeclared)?;
                let e = self.engine()?;
                Ok(Value::Poly(e.word_poly(&x.denom).scale(&c.inverse()?)))
            }
            _ => {
                let p = self.poly(v).expect("polynomial value");
                if let Some(e) = self.engine {
                    if let Some(word) = find_word(e, &p) {
                        return Ok(Value::Frac(OreFraction::new(word, self.alg.one())));
                    }
                }
                if p == self.alg.qdet() {
                    return Ok(Value::Gl(GlElement {
                        numerator: self.alg.one(),
                        dpower: 1,
                    }));
                }
                Err(undeclared())
            }
        }
    }
}

impl<K: Scalar> Value<K> {
    fn demote(self) -> Self {
        match self {
            Value::Poly(p) => match p.as_constant() {
                Some(c) => Value::Scalar(c),
                None => Value::Poly(p),
            },
            v => v,
        }
    }
}

fn as_scalar<K: Scalar>(v: &Value<K>) -> Option<K> {
    match v {
        Value::Scalar(c) => Some(c.clone()),
        Value::Poly(p) => p.as_constant(),
        _ => None,
    }
}

/// A word of Ore generators whose product is `p`, up to the engine's bound.
pub fn find_word<K: Scalar>(e: &OreEngine<'_, K>, p: &NcPoly<K>) -> Option<Vec<usize>> {
    let k = e.set().len();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..e.bound() {
        frontier = frontier
            .iter()
            .flat_map(|w| {
                (0..k).map(move |g| {
                    let mut w = w.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
        if let Some(w) = frontier.iter().find(|w| e.word_poly(w) == *p) {
            return Some(w.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use qflag_core::orelocal::{OreSet, DEFAULT_ORE_BOUND};
    use qflag_core::scalar::ScalarQ;

    #[test]
    fn polynomial_normal_form() {
        let alg = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let ev = Evaluator::new(&alg, None);
        let v = ev.eval(&parse_expr("t[1,2]*t[1,1]", 2).unwrap()).unwrap();
        assert_eq!(ev.render(&v).to_string(), "(1/q)*t[1,1]*t[1,2]");
        let v = ev.eval(&parse_expr("D[1,2|1,2] - D", 2).unwrap()).unwrap();
        assert_eq!(ev.render(&v).to_string(), "0");
        let v = ev.eval(&parse_expr("S(t[1,1])*t[1,1] + S(t[1,2])*t[2,1]", 2).unwrap()).unwrap();
        assert!(alg.gl_equal(&ev.to_gl(&v).unwrap(), &GlElement::poly(alg.one())));
    }

    #[test]
    fn declared_inverses() {
        let alg = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let set = OreSet::new("d", vec![alg.gen(2, 2)]).unwrap();
        let engine = OreEngine::new(&alg, set, DEFAULT_ORE_BOUND).unwrap();
        let ev = Evaluator::new(&alg, Some(&engine));
        let v = ev.normalize(&parse_expr("inv(t[2,2])*t[1,2]", 2).unwrap()).unwrap();
        assert_eq!(v, Value::Frac(OreFraction::new(vec![0], alg.gen(1, 2))));
        let v = ev.normalize(&parse_expr("t[2,2]^-2*t[2,2]^2", 2).unwrap()).unwrap();
        assert_eq!(ev.render(&v).to_string(), "1");
        let e = ev.eval(&parse_expr("inv(t[1,2])", 2).unwrap()).unwrap_err();
        assert_eq!(e, EvalError::Undeclared("t[1,2]".into()));
        let bare = Evaluator::new(&alg, None);
        let v = bare.eval(&parse_expr("D^-1*D", 2).unwrap()).unwrap();
        assert!(alg.gl_equal(&bare.to_gl(&v).unwrap(), &GlElement::poly(alg.one())));
        assert!(bare.eval(&parse_expr("t[1,1]/t[1,2]", 2).unwrap()).is_err());
        let v = bare.eval(&parse_expr("t[1,1]/(2*q)", 2).unwrap()).unwrap();
        assert_eq!(bare.render(&v).to_string(), "(1/(2*q))*t[1,1]");
    }
}
