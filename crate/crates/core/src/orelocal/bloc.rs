//! The quantum Borel algebra with its diagonal generators inverted.
//!
//! Every diagonal generator `b[k,k]` q-commutes with every Borel generator,
//! `b[k,k] x = q^{w(k,x)} x b[k,k]`. The exponents are measured from the
//! normal forms (not assumed), after which a monomial of the localization is
//! written uniquely as `b[1,1]^{e_1} ⋯ b[n,n]^{e_n} · w` with `e ∈ Z^n` and `w`
//! a standard word in the strictly lower generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::{add_into, join_terms, render_term, BorelPoly, Gen, Monomial, NcPoly, QMatrixAlgebra};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

/// Measured q-commutation exponents of the diagonal Borel generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagTable {
    n: usize,
    /// `weights[k][g]`: `b[k+1,k+1] g = q^w g b[k+1,k+1]`
    weights: Vec<Vec<i64>>,
}

impl DiagTable {
    /// Measures all exponents; fails if some diagonal generator does not
    /// q-commute with some Borel generator.
    pub fn measure<K: Scalar>(alg: &QMatrixAlgebra<K>) -> Result<Self> {
        let n = alg.n();
        let mut weights = vec![vec![0i64; n * n]; n];
        for k in 1..=n {
            let b = alg.gen(k, k);
            for g in alg.lower_gens() {
                let x = NcPoly::monomial(n, Monomial(vec![g]), K::one());
                let l = alg.borel_project(&alg.mul(&b, &x)).into_inner();
                let r = alg.borel_project(&alg.mul(&x, &b)).into_inner();
                let w = (-3..=3)
                    .find(|&w| l == r.scale(&alg.q_pow(w)))
                    .ok_or_else(|| {
                        Error::Unsupported(format!(
                            "b[{k},{k}] does not q-commute with {}",
                            alg.unpack(g)
                        ))
                    })?;
                weights[k - 1][g as usize] = w;
            }
        }
        Ok(DiagTable { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `w(k, g)` for 1-based diagonal `k`.
    pub fn weight(&self, k: usize, g: Gen) -> i64 {
        self.weights[k - 1][g as usize]
    }

    /// Exponent `c` with `word · D(e) = q^c D(e) · word`.
    fn pass_left(&self, word: &[Gen], e: &[i32]) -> i64 {
        let mut c = 0;
        for (k, &ek) in e.iter().enumerate() {
            if ek != 0 {
                let s: i64 = word.iter().map(|&g| self.weights[k][g as usize]).sum();
                c -= ek as i64 * s;
            }
        }
        c
    }

    /// Certificate: each diagonal generator q-commutes with each Borel generator.
    pub fn centrality_report<K: Scalar>(alg: &QMatrixAlgebra<K>) -> SuiteReport {
        let mut report = SuiteReport::new("borel-diagonal");
        match Self::measure(alg) {
            Ok(t) => {
                for k in 1..=alg.n() {
                    for g in alg.lower_gens() {
                        report.push(CaseResult::pass(
                            format!("b[{k},{k}] vs {}", alg.unpack(g)),
                            format!("q^{}", t.weight(k, g)),
                            "",
                        ));
                    }
                }
            }
            Err(e) => report.push(CaseResult::fail("q-centrality", "", "", e.to_string())),
        }
        report
    }
}

/// `b[1,1]^{e_1} ⋯ b[n,n]^{e_n} · word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocMono {
    pub diag: Vec<i32>,
    pub word: Monomial,
}

impl LocMono {
    pub fn one(n: usize) -> Self {
        LocMono {
            diag: vec![0; n],
            word: Monomial::one(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.word.is_empty()
    }

    pub fn render(&self, n: usize) -> String {
        let mut parts = Vec::new();
        for (k, &e) in self.diag.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("b[{0},{0}]", k + 1)),
                _ => parts.push(format!("b[{0},{0}]^{e}", k + 1)),
            }
        }
        if !self.word.is_empty() {
            parts.push(self.word.render(n).replace("t[", "b["));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// An element of the localized Borel algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocBorel<K: Scalar> {
    n: usize,
    terms: BTreeMap<LocMono, K>,
}

impl<K: Scalar> LocBorel<K> {
    pub fn zero(n: usize) -> Self {
        LocBorel {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::mono(LocMono::one(n), K::one())
    }

    pub fn mono(m: LocMono, c: K) -> Self {
        let mut x = Self::zero(m.diag.len());
        x.add_term(m, c);
        x
    }

    /// `c · Π b[k,k]^{e_k}`
    pub fn diag(e: Vec<i32>, c: K) -> Self {
        Self::mono(
            LocMono {
                diag: e,
                word: Monomial::one(),
            },
            c,
        )
    }

    pub fn terms(&self) -> &BTreeMap<LocMono, K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: LocMono, c: K) {
        add_into(&mut self.terms, m, c);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut r = Self::zero(self.n);
        for (m, d) in &self.terms {
            r.add_term(m.clone(), d.times(c));
        }
        r
    }

    /// Counit: diagonal generators map to 1, strictly lower ones to 0.
    pub fn counit(&self) -> K {
        self.terms
            .iter()
            .filter(|(m, _)| m.word.is_empty())
            .fold(K::zero(), |acc, (_, c)| acc.plus(c))
    }

    /// Inverse of a single diagonal term.
    pub fn diag_inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.is_diagonal() => Ok(Self::diag(
                m.diag.iter().map(|e| -e).collect(),
                c.inverse()?,
            )),
            _ => Err(Error::Unsupported(format!("{self} is not an invertible diagonal term"))),
        }
    }
}

impl<K: Scalar> fmt::Display for LocBorel<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| render_term(c, &m.render(self.n)));
        f.write_str(&join_terms(terms))
    }
}

/// Arithmetic in the localized Borel algebra.
pub struct BorelLoc<'a, K: Scalar> {
    alg: &'a QMatrixAlgebra<K>,
    table: DiagTable,
}

impl<'a, K: Scalar> BorelLoc<'a, K> {
    pub fn new(alg: &'a QMatrixAlgebra<K>) -> Result<Self> {
        Ok(BorelLoc {
            alg,
            table: DiagTable::measure(alg)?,
        })
    }

    pub fn alg(&self) -> &'a QMatrixAlgebra<K> {
        self.alg
    }

    pub fn table(&self) -> &DiagTable {
        &self.table
    }

    /// Rewrites a standard Borel monomial as `q^c D(e) w`.
    pub fn split(&self, m: &Monomial) -> (i64, Vec<i32>, Monomial) {
        let n = self.alg.n();
        let mut e = vec![0i32; n];
        let mut w = Vec::new();
        let mut c = 0i64;
        for &g in m.gens() {
            let gi = self.alg.unpack(g);
            if gi.is_diagonal() {
                // w b = q^{-Σ weight} b w
                c -= w.iter().map(|&x| self.table.weight(gi.row, x)).sum::<i64>();
                e[gi.row - 1] += 1;
            } else {
                w.push(g);
            }
        }
        (c, e, Monomial(w))
    }

    pub fn from_borel(&self, x: &BorelPoly<K>) -> LocBorel<K> {
        self.from_poly(x.inner())
    }

    /// Embeds a polynomial in lower generators (upper terms must be absent).
    pub fn from_poly(&self, x: &NcPoly<K>) -> LocBorel<K> {
        let mut out = LocBorel::zero(self.alg.n());
        for (m, c) in x.terms() {
            debug_assert!(self.alg.is_lower_word(m.gens()));
            let (qc, e, w) = self.split(m);
            out.add_term(LocMono { diag: e, word: w }, c.times(&self.alg.q_pow(qc)));
        }
        out
    }

    /// `b[i,j]`; strictly upper generators vanish in the Borel quotient.
    pub fn gen(&self, i: usize, j: usize) -> LocBorel<K> {
        if i < j {
            return LocBorel::zero(self.alg.n());
        }
        self.from_poly(&self.alg.gen(i, j))
    }

    pub fn mul(&self, x: &LocBorel<K>, y: &LocBorel<K>) -> LocBorel<K> {
        let n = self.alg.n();
        let mut out = LocBorel::zero(n);
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                // D(e) w D(f) v = q^c D(e+f) w v
                let c = self.table.pass_left(mx.word.gens(), &my.diag);
                let base: Vec<i32> = mx.diag.iter().zip(&my.diag).map(|(a, b)| a + b).collect();
                let coeff = cx.times(cy).times(&self.alg.q_pow(c));
                let wv = self.alg.borel_project(&self.alg.mul(
                    &NcPoly::monomial(n, mx.word.clone(), K::one()),
                    &NcPoly::monomial(n, my.word.clone(), K::one()),
                ));
                for (m, d) in wv.inner().terms() {
                    let (qc, e, w) = self.split(m);
                    let diag = base.iter().zip(&e).map(|(a, b)| a + b).collect();
                    out.add_term(
                        LocMono { diag, word: w },
                        coeff.times(d).times(&self.alg.q_pow(qc)),
                    );
                }
            }
        }
        out
    }

    /// Antipode on generators by back-substitution:
    /// `S(b[i,i]) = b[i,i]^{-1}`, `S(b[i,j]) = -b[i,i]^{-1} Σ_{k=j}^{i-1} b[i,k] S(b[k,j])`.
    pub fn antipode_gen(&self, i: usize, j: usize) -> LocBorel<K> {
        let n = self.alg.n();
        if i < j {
            return LocBorel::zero(n);
        }
        let mut inv = vec![0; n];
        inv[i - 1] = -1;
        let bii_inv = LocBorel::diag(inv, K::one());
        if i == j {
            return bii_inv;
        }
        let mut sum = LocBorel::zero(n);
        for k in j..i {
            sum = sum.add(&self.mul(&self.gen(i, k), &self.antipode_gen(k, j)));
        }
        self.mul(&bii_inv, &sum).scale(&K::one().negate())
    }

    /// Anti-multiplicative antipode on elements of the localization.
    pub fn antipode(&self, x: &LocBorel<K>) -> LocBorel<K> {
        let n = self.alg.n();
        let mut out = LocBorel::zero(n);
        for (m, c) in &x.terms {
            // S(D(e) w) = S(w) S(D(e)) with S(b_kk^e) = b_kk^{-e}
            let mut acc = LocBorel::one(n);
            for &g in m.word.gens().iter().rev() {
                let gi = self.alg.unpack(g);
                acc = self.mul(&acc, &self.antipode_gen(gi.row, gi.col));
            }
            let neg: Vec<i32> = m.diag.iter().map(|e| -e).collect();
            acc = self.mul(&acc, &LocBorel::diag(neg, K::one()));
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `Σ_k S(b[i,k]) b[k,j] = δ = Σ_k b[i,k] S(b[k,j])`.
    pub fn antipode_axiom_check(&self) -> SuiteReport {
        let n = self.alg.n();
        let mut report = SuiteReport::new("borel-antipode");
        for i in 1..=n {
            for j in 1..=n {
                let delta = if i == j { LocBorel::one(n) } else { LocBorel::zero(n) };
                let mut left = LocBorel::zero(n);
                let mut right = LocBorel::zero(n);
                for k in 1..=n {
                    left = left.add(&self.mul(&self.antipode_gen(i, k), &self.gen(k, j)));
                    right = right.add(&self.mul(&self.gen(i, k), &self.antipode_gen(k, j)));
                }
                for (name, v) in [("S(b)b", left), ("bS(b)", right)] {
                    report.push(CaseResult::check(
                        format!("{name} ({i},{j})"),
                        v == delta,
                        v.to_string(),
                        delta.to_string(),
                        v.add(&delta.scale(&K::one().negate())).to_string(),
                    ));
                }
            }
        }
        report
    }

    /// `Δ(x)` for a Borel polynomial, both legs in the localization.
    pub fn coproduct(&self, x: &BorelPoly<K>) -> Vec<(LocBorel<K>, LocBorel<K>)> {
        let t = self.alg.comultiply(x.inner());
        let mut out: BTreeMap<Monomial, NcPoly<K>> = BTreeMap::new();
        for ((a, b), c) in t.terms() {
            if !self.alg.is_lower_word(a.gens()) || !self.alg.is_lower_word(b.gens()) {
                continue;
            }
            out.entry(b.clone())
                .or_insert_with(|| NcPoly::zero(self.alg.n()))
                .add_term(a.clone(), c);
        }
        out.into_iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(b, a)| {
                (
                    self.from_poly(&a),
                    self.from_poly(&NcPoly::monomial(self.alg.n(), b, K::one())),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarQ;

    #[test]
    fn weights_two() {
        let a = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let t = DiagTable::measure(&a).unwrap();
        let c = a.pack(2, 1);
        assert_eq!(t.weight(1, c), 1);
        assert_eq!(t.weight(2, c), -1);
        assert_eq!(t.weight(1, a.pack(2, 2)), 0);
    }

    #[test]
    fn antipode_axioms() {
        for n in [2, 3] {
            let a = QMatrixAlgebra::new(n, ScalarQ::q()).unwrap();
            let b = BorelLoc::new(&a).unwrap();
            assert!(b.antipode_axiom_check().passed());
        }
    }

    #[test]
    fn inverse_of_diagonal() {
        let a = QMatrixAlgebra::new(2, ScalarQ::q()).unwrap();
        let b = BorelLoc::new(&a).unwrap();
        let x = b.gen(2, 2);
        let y = x.diag_inverse().unwrap();
        assert_eq!(b.mul(&x, &y), LocBorel::one(2));
        assert!(b.gen(2, 1).diag_inverse().is_err());
    }
}
