use std::fmt;

use crate::qalgebra::{NcPoly, QMatrixAlgebra};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

use super::complement;

/// `numerator · D^{-dpower}` in the localization at the central determinant.
/// Not canonical: compare with [`QMatrixAlgebra::gl_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlElement<K: Scalar> {
    pub numerator: NcPoly<K>,
    pub dpower: u32,
}

impl<K: Scalar> GlElement<K> {
    pub fn poly(p: NcPoly<K>) -> Self {
        GlElement {
            numerator: p,
            dpower: 0,
        }
    }
}

impl<K: Scalar> fmt::Display for GlElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dpower {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})*D^-1", self.numerator),
            k => write!(f, "({})*D^-{k}", self.numerator),
        }
    }
}

impl<K: Scalar> QMatrixAlgebra<K> {
    pub fn qdet_pow(&self, k: u32) -> NcPoly<K> {
        self.pow(&self.qdet(), k as usize)
    }

    pub fn gl_mul(&self, x: &GlElement<K>, y: &GlElement<K>) -> GlElement<K> {
        GlElement {
            numerator: self.mul(&x.numerator, &y.numerator),
            dpower: x.dpower + y.dpower,
        }
    }

    pub fn gl_add(&self, x: &GlElement<K>, y: &GlElement<K>) -> GlElement<K> {
        let k = x.dpower.max(y.dpower);
        let lift = |e: &GlElement<K>| self.mul(&e.numerator, &self.qdet_pow(k - e.dpower));
        GlElement {
            numerator: lift(x).add(&lift(y)),
            dpower: k,
        }
    }

    /// Cross-multiplication: `x D^{b} = y D^{a}` for `x D^{-a}`, `y D^{-b}`.
    pub fn gl_equal(&self, x: &GlElement<K>, y: &GlElement<K>) -> bool {
        self.gl_residual(x, y).is_zero()
    }

    pub fn gl_residual(&self, x: &GlElement<K>, y: &GlElement<K>) -> NcPoly<K> {
        let l = self.mul(&x.numerator, &self.qdet_pow(y.dpower));
        let r = self.mul(&y.numerator, &self.qdet_pow(x.dpower));
        l.sub(&r)
    }

    /// `S t^i_j = (-q)^{i-j} D^{-1} D^{j^}_{i^}`.
    pub fn antipode_gen(&self, i: usize, j: usize) -> GlElement<K> {
        let n = self.n();
        let minor = self.minor(&complement(&[j], n), &complement(&[i], n));
        GlElement {
            numerator: minor.scale(&self.neg_q_pow(i as i64 - j as i64)),
            dpower: 1,
        }
    }

    /// The anti-multiplicative extension of [`antipode_gen`](Self::antipode_gen).
    pub fn antipode(&self, x: &NcPoly<K>) -> GlElement<K> {
        let mut total = GlElement::poly(self.zero());
        for (m, c) in x.terms() {
            let mut acc = GlElement::poly(self.constant(c.clone()));
            for &g in m.gens().iter().rev() {
                let gi = self.unpack(g);
                acc = self.gl_mul(&acc, &self.antipode_gen(gi.row, gi.col));
            }
            total = self.gl_add(&total, &acc);
        }
        total
    }

    /// `Σ_k t^i_k S(t^k_j) = δ^i_j = Σ_k S(t^i_k) t^k_j` for all `i, j`.
    pub fn antipode_axiom_check(&self) -> SuiteReport {
        let n = self.n();
        let mut report = SuiteReport::new("antipode");
        for i in 1..=n {
            for j in 1..=n {
                let delta = GlElement::poly(if i == j { self.one() } else { self.zero() });
                for right in [true, false] {
                    let mut sum = GlElement::poly(self.zero());
                    for k in 1..=n {
                        let term = if right {
                            self.gl_mul(&GlElement::poly(self.gen(i, k)), &self.antipode_gen(k, j))
                        } else {
                            self.gl_mul(&self.antipode_gen(i, k), &GlElement::poly(self.gen(k, j)))
                        };
                        sum = self.gl_add(&sum, &term);
                    }
                    let name = if right {
                        format!("sum_k t[{i},k] S(t[k,{j}])")
                    } else {
                        format!("sum_k S(t[{i},k]) t[k,{j}]")
                    };
                    let residual = self.gl_residual(&sum, &delta);
                    report.push(CaseResult::check(
                        name,
                        residual.is_zero(),
                        sum.to_string(),
                        delta.to_string(),
                        residual.to_string(),
                    ));
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarQ;

    fn alg(n: usize) -> QMatrixAlgebra<ScalarQ> {
        QMatrixAlgebra::new(n, ScalarQ::q()).unwrap()
    }

    #[test]
    fn antipode_generators_two() {
        let a = alg(2);
        let s11 = a.antipode_gen(1, 1);
        assert_eq!(s11.numerator, a.gen(2, 2));
        assert_eq!(s11.dpower, 1);
        let s12 = a.antipode_gen(1, 2);
        assert_eq!(s12.numerator, a.gen(1, 2).scale(&a.q_inv().negate()));
        let s21 = a.antipode_gen(2, 1);
        assert_eq!(s21.numerator, a.gen(2, 1).scale(&a.q().negate()));
        assert_eq!(a.antipode(&a.gen(1, 1)), s11);
        assert!(a.gl_equal(&a.antipode(&a.one()), &GlElement::poly(a.one())));
    }

    #[test]
    fn antipode_axioms_two() {
        assert!(alg(2).antipode_axiom_check().passed());
    }

    #[test]
    fn antipode_is_anti_multiplicative() {
        let a = alg(2);
        let x = a.gen(1, 1);
        let y = a.gen(1, 2);
        let lhs = a.antipode(&a.mul(&x, &y));
        let rhs = a.gl_mul(&a.antipode(&y), &a.antipode(&x));
        assert!(a.gl_equal(&lhs, &rhs));
    }

    #[test]
    fn gl_equality_cross_multiplies() {
        let a = alg(2);
        let d = a.qdet();
        let x = GlElement { numerator: a.mul(&a.gen(1, 2), &d), dpower: 2 };
        let y = GlElement { numerator: a.gen(1, 2), dpower: 1 };
        assert!(a.gl_equal(&x, &y));
        assert!(!a.gl_equal(&x, &GlElement::poly(a.gen(1, 2))));
    }
}
