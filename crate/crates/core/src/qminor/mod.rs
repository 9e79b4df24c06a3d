//! Quantum determinants and minors, Laplace expansions, the localization
//! `GL_q` at the central determinant, and the antipode.

mod gl;
mod quasidet;

use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::{NcPoly, QMatrixAlgebra};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

pub use gl::GlElement;
pub use quasidet::QuasidetOutcome;

/// A quantum minor `D^K_L` with increasing row labels `K` and column labels `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidIndex(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        for labels in [&rows, &cols] {
            if labels.first() == Some(&0) || labels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidIndex(format!(
                    "labels {labels:?} must be positive and strictly increasing"
                )));
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    /// `D^K_L` after sorting both label sets.
    pub fn sorted(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        cols.sort_unstable();
        Self::new(rows, cols)
    }

    pub fn full(n: usize) -> Self {
        MinorSpec {
            rows: (1..=n).collect(),
            cols: (1..=n).collect(),
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.rows.iter().chain(&self.cols).any(|&l| l > n) {
            return Err(Error::InvalidIndex(format!("{self} with n = {n}")));
        }
        Ok(())
    }

    /// The complementary minor `D^{K^}_{L^}`.
    pub fn complement(&self, n: usize) -> Self {
        MinorSpec {
            rows: complement(&self.rows, n),
            cols: complement(&self.cols, n),
        }
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "D[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

/// Ordered complement of `labels` in `1..=n`.
pub fn complement(labels: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|l| !labels.contains(l)).collect()
}

/// All increasing `m`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for l in start..=n {
            cur.push(l);
            go(l + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, m, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..m` (as image vectors) with their inversion counts,
/// in lexicographic order.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = inversions(&p);
            (p, inv)
        })
        .collect()
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Which of the two permutation-sum formulas for the determinant to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetForm {
    /// `Σ_σ (-q)^{l(σ)-l(τ)} t^{τ(1)}_{σ(1)} ⋯ t^{τ(m)}_{σ(m)}`
    Row,
    /// `Σ_σ (-q)^{l(σ)-l(τ)} t^{σ(1)}_{τ(1)} ⋯ t^{σ(m)}_{τ(m)}`
    Column,
}

impl<K: Scalar> QMatrixAlgebra<K> {
    /// The determinant of the sub-block on `rows × cols` by one of the
    /// permutation-sum formulas, with reference permutation `tau` of `0..m`.
    pub fn qdet_with(&self, rows: &[usize], cols: &[usize], tau: &[usize], form: DetForm) -> NcPoly<K> {
        let m = rows.len();
        let ltau = inversions(tau) as i64;
        let mut acc = self.zero();
        for (sigma, l) in permutations(m) {
            let sign = self.neg_q_pow(l as i64 - ltau);
            let word: Vec<_> = (0..m)
                .map(|k| match form {
                    DetForm::Row => self.pack(rows[tau[k]], cols[sigma[k]]),
                    DetForm::Column => self.pack(rows[sigma[k]], cols[tau[k]]),
                })
                .collect();
            acc.add_scaled(&self.poly_times_word(&self.one(), &word), &sign);
        }
        acc
    }

    /// The quantum determinant `D`.
    pub fn qdet(&self) -> NcPoly<K> {
        self.minor(&(1..=self.n()).collect::<Vec<_>>(), &(1..=self.n()).collect::<Vec<_>>())
    }

    pub fn qminor(&self, spec: &MinorSpec) -> Result<NcPoly<K>> {
        spec.validate(self.n())?;
        Ok(self.minor(spec.rows(), spec.cols()))
    }

    /// `D^K_L` for increasing label lists (the empty minor is 1). Cached.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> NcPoly<K> {
        debug_assert_eq!(rows.len(), cols.len());
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = self.minors.read().unwrap().get(&key) {
            return p.clone();
        }
        let tau: Vec<usize> = (0..rows.len()).collect();
        let p = self.qdet_with(rows, cols, &tau, DetForm::Row);
        self.minors.write().unwrap().insert(key, p.clone());
        p
    }

    /// Both determinant formulas for every reference permutation agree.
    pub fn qdet_forms_check(&self) -> SuiteReport {
        let labels: Vec<usize> = (1..=self.n()).collect();
        let d = self.qdet();
        let mut report = SuiteReport::new("qdet-forms");
        for (tau, _) in permutations(self.n()) {
            for form in [DetForm::Row, DetForm::Column] {
                let v = self.qdet_with(&labels, &labels, &tau, form);
                let name = format!("{form:?} tau={:?}", tau.iter().map(|t| t + 1).collect::<Vec<_>>());
                report.push(CaseResult::check(
                    name,
                    v == d,
                    v.to_string(),
                    d.to_string(),
                    v.sub(&d).to_string(),
                ));
            }
        }
        report
    }

    /// One Laplace expansion of `δ^K_L D`.
    ///
    /// Variants: 1. `Σ_J (-q)^{J-L} D^K_J D^{L^}_{J^}`, 2. `Σ_J (-q)^{J-L} D^J_K D^{J^}_{L^}`,
    /// 3. `Σ_J (-q)^{L-J} D^{L^}_{J^} D^K_J`, 4. `Σ_J (-q)^{L-J} D^{J^}_{L^} D^J_K`,
    /// where a multi-index in an exponent stands for its label sum.
    pub fn laplace_expansion(&self, k: &[usize], l: &[usize], variant: u8) -> Result<NcPoly<K>> {
        let n = self.n();
        if k.len() != l.len() || k.len() > n {
            return Err(Error::InvalidIndex(format!("Laplace multi-indices {k:?}, {l:?}")));
        }
        MinorSpec::new(k.to_vec(), l.to_vec())?.validate(n)?;
        let sum = |v: &[usize]| v.iter().sum::<usize>() as i64;
        let lh = complement(l, n);
        let mut acc = self.zero();
        for j in subsets(n, k.len()) {
            let jh = complement(&j, n);
            let (sign, x, y) = match variant {
                1 => (sum(&j) - sum(l), self.minor(k, &j), self.minor(&lh, &jh)),
                2 => (sum(&j) - sum(l), self.minor(&j, k), self.minor(&jh, &lh)),
                3 => (sum(l) - sum(&j), self.minor(&lh, &jh), self.minor(k, &j)),
                4 => (sum(l) - sum(&j), self.minor(&jh, &lh), self.minor(&j, k)),
                _ => return Err(Error::InvalidIndex(format!("Laplace variant {variant}"))),
            };
            acc.add_scaled(&self.mul(&x, &y), &self.neg_q_pow(sign));
        }
        Ok(acc)
    }

    pub fn laplace_check(&self, k: &[usize], l: &[usize], variant: u8) -> Result<SuiteReport> {
        let lhs = if k == l { self.qdet() } else { self.zero() };
        let rhs = self.laplace_expansion(k, l, variant)?;
        let name = format!("v{variant} K={k:?} L={l:?}");
        Ok(SuiteReport::with_cases(
            "laplace",
            vec![CaseResult::check(
                name,
                lhs == rhs,
                lhs.to_string(),
                rhs.to_string(),
                lhs.sub(&rhs).to_string(),
            )],
        ))
    }

    /// All four variants for every pair of `m`-multi-indices, `m` in `sizes`.
    pub fn laplace_suite(&self, sizes: &[usize]) -> SuiteReport {
        use rayon::prelude::*;
        let n = self.n();
        let jobs: Vec<(Vec<usize>, Vec<usize>, u8)> = sizes
            .iter()
            .flat_map(|&m| {
                let subs = subsets(n, m);
                subs.iter()
                    .flat_map(|k| subs.iter().map(move |l| (k.clone(), l.clone())))
                    .flat_map(|(k, l)| (1..=4u8).map(move |v| (k.clone(), l.clone(), v)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let cases = jobs
            .par_iter()
            .map(|(k, l, v)| {
                CaseResult::timed(|| match self.laplace_check(k, l, *v) {
                    Ok(mut r) => r.cases.remove(0),
                    Err(e) => CaseResult::fail(format!("v{v} K={k:?} L={l:?}"), "", "", e.to_string()),
                })
            })
            .collect();
        SuiteReport::with_cases("laplace", cases)
    }

    /// `D g = g D` for every generator.
    pub fn centrality_check(&self) -> SuiteReport {
        let d = self.qdet();
        let mut report = SuiteReport::new("centrality");
        for g in self.all_gens() {
            let gp = NcPoly::monomial(self.n(), crate::qalgebra::Monomial(vec![g]), K::one());
            let (l, r) = (self.mul(&d, &gp), self.mul(&gp, &d));
            report.push(CaseResult::check(
                format!("D*{}", self.unpack(g)),
                l == r,
                l.to_string(),
                r.to_string(),
                l.sub(&r).to_string(),
            ));
        }
        report
    }

    /// `Δ(D^K_L) = Σ_J D^K_J ⊗ D^J_L`.
    pub fn minor_coproduct_check(&self, k: &[usize], l: &[usize]) -> CaseResult {
        use crate::qalgebra::TensorPoly;
        let lhs = self.comultiply(&self.minor(k, l));
        let mut rhs = TensorPoly::zero(self.n());
        for j in subsets(self.n(), k.len()) {
            rhs = rhs.add(&TensorPoly::simple(&self.minor(k, &j), &self.minor(&j, l)));
        }
        let name = format!("Delta D[{k:?}|{l:?}]");
        if lhs == rhs {
            CaseResult::pass(name, lhs.to_string(), rhs.to_string())
        } else {
            CaseResult::fail(name, lhs.to_string(), rhs.to_string(), "coproducts differ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Monomial;
    use crate::scalar::ScalarQ;

    fn alg(n: usize) -> QMatrixAlgebra<ScalarQ> {
        QMatrixAlgebra::new(n, ScalarQ::q()).unwrap()
    }

    #[test]
    fn qdet_two() {
        let a = alg(2);
        let d = a.qdet();
        let expect = NcPoly::from_terms(
            2,
            [
                (Monomial(vec![0, 3]), ScalarQ::one()),
                (Monomial(vec![1, 2]), ScalarQ::q().negate()),
            ],
        );
        assert_eq!(d, expect);
        assert_eq!(alg(1).qdet(), alg(1).gen(1, 1));
    }

    #[test]
    fn qdet_three_has_six_terms() {
        assert_eq!(alg(3).qdet().len(), 6);
        assert!(alg(3).qdet_forms_check().passed());
    }

    #[test]
    fn embedded_minor() {
        let a3 = alg(3);
        let m = a3.qminor(&MinorSpec::new(vec![1, 2], vec![1, 2]).unwrap()).unwrap();
        let expect = a3
            .mul(&a3.gen(1, 1), &a3.gen(2, 2))
            .sub(&a3.mul(&a3.gen(1, 2), &a3.gen(2, 1)).scale(a3.q()));
        assert_eq!(m, expect);
        assert_eq!(a3.qminor(&MinorSpec::full(3)).unwrap(), a3.qdet());
        assert_eq!(alg(2).qminor(&MinorSpec::new(vec![1], vec![2]).unwrap()).unwrap(), alg(2).gen(1, 2));
    }

    #[test]
    fn spec_validation() {
        assert!(MinorSpec::new(vec![2, 1], vec![1, 2]).is_err());
        assert!(MinorSpec::new(vec![1], vec![1, 2]).is_err());
        assert!(alg(2).qminor(&MinorSpec::new(vec![3], vec![1]).unwrap()).is_err());
    }

    #[test]
    fn laplace_two() {
        let a = alg(2);
        assert!(a.laplace_suite(&[1]).passed());
    }
}
