//! The Borel coaction on Ore localizations.
//!
//! `ρ_B = (id ⊗ π) ∘ Δ` extends to `S⁻¹ M_q` when every generator `s` of `S`
//! is coacted on as `s ⊗ g_s` with `g_s` invertible in the localized Borel;
//! then `ρ(s⁻¹ r) = Σ s⁻¹ r₍₀₎ ⊗ g_s⁻¹ π(r₍₁₎)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::{Monomial, NcPoly, TensorPoly};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

use super::bloc::{BorelLoc, LocBorel, LocMono};
use super::{OreEngine, OreFraction};

/// `ρ_B(s) = s ⊗ c_s · D(e_s)` for each generator `s` of an Ore set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility<K: Scalar> {
    /// Right leg of each generator, a single diagonal term.
    pub legs: Vec<LocBorel<K>>,
}

impl<K: Scalar> Compatibility<K> {
    /// `g_s` for the product `s` of `word`.
    pub fn word_leg(&self, bl: &BorelLoc<'_, K>, word: &[usize]) -> LocBorel<K> {
        word.iter()
            .fold(LocBorel::one(bl.alg().n()), |acc, &i| bl.mul(&acc, &self.legs[i]))
    }
}

/// `ρ(s⁻¹ r)` with the left legs over one denominator `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactedFraction<K: Scalar> {
    pub denom: Vec<usize>,
    pub terms: BTreeMap<(Monomial, LocMono), K>,
}

impl<K: Scalar> CoactedFraction<K> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Groups left legs by right leg.
    pub fn by_right_leg(&self, n: usize) -> BTreeMap<LocMono, NcPoly<K>> {
        let mut out: BTreeMap<LocMono, NcPoly<K>> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(r.clone())
                .or_insert_with(|| NcPoly::zero(n))
                .add_term(l.clone(), c);
        }
        out
    }
}

impl<K: Scalar> fmt::Display for CoactedFraction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((_, r)) = self.terms.keys().next() else {
            return f.write_str("0");
        };
        let n = r.diag.len();
        let parts: Vec<String> = self
            .by_right_leg(n)
            .into_iter()
            .map(|(r, p)| format!("({p}) (x) {}", r.render(n)))
            .collect();
        if self.denom.is_empty() {
            write!(f, "{}", parts.join(" + "))
        } else {
            write!(f, "inv{:?}*[{}]", self.denom, parts.join(" + "))
        }
    }
}

/// Splits `ρ_B(s)` as `s ⊗ g` with a single diagonal right leg, if possible.
fn split_leg<K: Scalar>(bl: &BorelLoc<'_, K>, s: &NcPoly<K>) -> std::result::Result<LocBorel<K>, String> {
    let alg = bl.alg();
    let rho = alg.coact_borel(s);
    let mut groups: BTreeMap<Monomial, NcPoly<K>> = BTreeMap::new();
    for ((l, r), c) in rho.terms() {
        groups
            .entry(r.clone())
            .or_insert_with(|| NcPoly::zero(alg.n()))
            .add_term(l.clone(), c);
    }
    groups.retain(|_, p| !p.is_zero());
    let mut off = Vec::new();
    let mut leg = None;
    for (r, p) in &groups {
        let diag = r.gens().iter().all(|&g| alg.unpack(g).is_diagonal());
        match s.ratio_to(p) {
            Some(c) if diag && leg.is_none() => leg = Some((r.clone(), c)),
            _ => off.push(format!("({p}) (x) {}", r.render(alg.n()).replace("t[", "b["))),
        }
    }
    match leg {
        Some((r, c)) if off.is_empty() => {
            let (qc, e, _) = bl.split(&r);
            Ok(LocBorel::diag(e, c.times(&alg.q_pow(qc))))
        }
        _ => Err(if off.is_empty() {
            "no diagonal leg".into()
        } else {
            off.join(" + ")
        }),
    }
}

impl<'a, K: Scalar> OreEngine<'a, K> {
    /// Checks that each generator is coacted on by a diagonal group-like leg.
    pub fn compat_check(&self, bl: &BorelLoc<'_, K>) -> (SuiteReport, Option<Compatibility<K>>) {
        let mut report = SuiteReport::new("compat");
        let mut legs = Vec::new();
        for (i, s) in self.set().gens().iter().enumerate() {
            let name = format!("rho_B({})", self.set().labels()[i]);
            match split_leg(bl, s) {
                Ok(g) => {
                    report.push(CaseResult::pass(name, format!("s (x) {g}"), ""));
                    legs.push(g);
                }
                Err(w) => report.push(CaseResult::fail(name, "", "s (x) diagonal", w)),
            }
        }
        let ok = legs.len() == self.set().len();
        (report, ok.then_some(Compatibility { legs }))
    }

    /// Like [`compat_check`](Self::compat_check) but failing on incompatibility.
    pub fn compatibility(&self, bl: &BorelLoc<'_, K>) -> Result<Compatibility<K>> {
        let (report, c) = self.compat_check(bl);
        c.ok_or_else(|| {
            let w: Vec<String> = report.failures().map(|c| c.witness.clone()).collect();
            Error::Incompatible(format!("{}: {}", self.set().name, w.join("; ")))
        })
    }

    /// `ρ(s⁻¹ r) = Σ s⁻¹ r₍₀₎ ⊗ g_s⁻¹ π(r₍₁₎)`.
    pub fn coact_fraction(
        &self,
        bl: &BorelLoc<'_, K>,
        compat: &Compatibility<K>,
        x: &OreFraction<K>,
    ) -> Result<CoactedFraction<K>> {
        let ginv = compat.word_leg(bl, &x.denom).diag_inverse()?;
        let rho = self.alg().coact_borel(&x.num);
        let mut terms = BTreeMap::new();
        for ((l, r), c) in rho.terms() {
            let right = bl.mul(&ginv, &bl.from_poly(&NcPoly::monomial(self.alg().n(), r.clone(), c.clone())));
            for (m, d) in right.terms() {
                crate::qalgebra::add_into(&mut terms, (l.clone(), m.clone()), d.clone());
            }
        }
        Ok(CoactedFraction {
            denom: x.denom.clone(),
            terms,
        })
    }

    /// `ρ(x) = x ⊗ 1`, decided by the cleared identity `ρ_B(r) = r ⊗ g_s`.
    pub fn coinvariant_check(
        &self,
        bl: &BorelLoc<'_, K>,
        compat: &Compatibility<K>,
        x: &OreFraction<K>,
    ) -> Result<bool> {
        Ok(self.coinvariant_residual(bl, compat, x)?.is_zero())
    }

    /// `ρ_B(r) − r ⊗ g_s`, right legs in the localized Borel.
    pub fn coinvariant_residual(
        &self,
        bl: &BorelLoc<'_, K>,
        compat: &Compatibility<K>,
        x: &OreFraction<K>,
    ) -> Result<CoactedFraction<K>> {
        let mut c = self.coact_fraction(bl, compat, x)?;
        let one = LocMono::one(self.alg().n());
        for (m, k) in x.num.terms() {
            crate::qalgebra::add_into(&mut c.terms, (m.clone(), one.clone()), k.negate());
        }
        Ok(c)
    }

    /// The same cleared identity, stated polynomially in `M_q ⊗ B`.
    pub fn coinvariant_tensor_residual(&self, compat: &Compatibility<K>, bl: &BorelLoc<'_, K>, x: &OreFraction<K>) -> TensorPoly<K> {
        let alg = self.alg();
        let n = alg.n();
        let g = compat.word_leg(bl, &x.denom);
        let mut res = alg.coact_borel(&x.num);
        for (gm, gc) in g.terms() {
            let mut w = Vec::new();
            for (k, &e) in gm.diag.iter().enumerate() {
                w.extend(std::iter::repeat_n(alg.pack(k + 1, k + 1), e.max(0) as usize));
            }
            let gpoly = NcPoly::monomial(n, Monomial(w), gc.clone());
            for (m, c) in x.num.terms() {
                for (gw, d) in gpoly.terms() {
                    res.add_term(m.clone(), gw.clone(), &c.times(d).negate());
                }
            }
        }
        res
    }

    /// Coinvariance and the coaction square survive the passage to a larger
    /// Ore set. `map[i]` gives the word over `big` equal to generator `i`.
    pub fn nested_check(
        &self,
        bl: &BorelLoc<'_, K>,
        big: &OreEngine<'a, K>,
        map: &[Vec<usize>],
        samples: &[OreFraction<K>],
    ) -> SuiteReport {
        let mut report = SuiteReport::new("nested");
        let (small_c, big_c) = match (self.compatibility(bl), big.compatibility(bl)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                let w = [a.err(), b.err()]
                    .into_iter()
                    .flatten()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("; ");
                report.push(CaseResult::fail("compatibility", "", "", w));
                return report;
            }
        };
        for (i, w) in map.iter().enumerate() {
            let ok = big.word_poly(w) == self.set().gens()[i];
            report.push(CaseResult::check(
                format!("generator {} in larger set", self.set().labels()[i]),
                ok,
                big.set().render_word(w),
                self.set().labels()[i].clone(),
                "",
            ));
        }
        for x in samples {
            let name = x.render(self.set());
            let run = || -> Result<(bool, bool, CaseResult)> {
                let word: Vec<usize> = x.denom.iter().flat_map(|&i| map[i].iter().copied()).collect();
                let y = OreFraction::new(word, x.num.clone());
                let small = self.coinvariant_check(bl, &small_c, x)?;
                let large = big.coinvariant_check(bl, &big_c, &y)?;
                // the square: both coactions agree on the image
                let a = self.coact_fraction(bl, &small_c, x)?;
                let b = big.coact_fraction(bl, &big_c, &y)?;
                let square = a.terms == b.terms;
                let case = CaseResult::check(
                    format!("{name}: coaction square"),
                    square,
                    b.to_string(),
                    a.to_string(),
                    "",
                );
                Ok((small, large, case))
            };
            match run() {
                Ok((small, large, case)) => {
                    report.push(CaseResult::check(
                        format!("{name}: coinvariance preserved"),
                        !small || large,
                        format!("large: {large}"),
                        format!("small: {small}"),
                        "",
                    ));
                    report.push(case);
                }
                Err(e) => report.push(CaseResult::inconclusive(name, "", "", e.to_string())),
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orelocal::OreSet;
    use crate::qalgebra::QMatrixAlgebra;
    use crate::scalar::ScalarQ;

    #[test]
    fn examples_two() {
        let a = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let bl = BorelLoc::new(&a).unwrap();
        let set = OreSet::new("flag", vec![a.gen(2, 2), a.qdet()]).unwrap();
        let e = OreEngine::new(&a, set, 3).unwrap();
        let (rep, c) = e.compat_check(&bl);
        assert!(rep.passed(), "{rep}");
        let c = c.unwrap();
        assert_eq!(c.legs[0], bl.gen(2, 2));
        assert_eq!(c.legs[1], bl.mul(&bl.gen(1, 1), &bl.gen(2, 2)));
        let db = OreFraction::new(vec![0], a.gen(1, 2));
        assert!(e.coinvariant_check(&bl, &c, &db).unwrap());
        let da = OreFraction::new(vec![0], a.gen(1, 1));
        assert!(!e.coinvariant_check(&bl, &c, &da).unwrap());
        assert!(e.coinvariant_check(&bl, &c, &OreFraction::poly(a.one())).unwrap());
        // d⁻¹ ↦ d⁻¹ ⊗ b22⁻¹
        let dinv = e
            .coact_fraction(&bl, &c, &OreFraction::new(vec![0], a.one()))
            .unwrap();
        let mut expect = BTreeMap::new();
        expect.insert(
            (Monomial::one(), LocMono { diag: vec![0, -1], word: Monomial::one() }),
            ScalarQ::one(),
        );
        assert_eq!(dinv.terms, expect);
        assert!(e.coinvariant_tensor_residual(&c, &bl, &db).is_zero());
    }

    #[test]
    fn non_flag_minor_is_incompatible() {
        let a = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let bl = BorelLoc::new(&a).unwrap();
        let set = OreSet::new("a", vec![a.gen(1, 1)]).unwrap();
        let e = OreEngine::new(&a, set, 3).unwrap();
        assert!(!e.compat_check(&bl).0.passed());
    }
}
