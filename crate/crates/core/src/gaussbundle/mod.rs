//! Gauss decomposition of the row-permuted quantum matrix in the flag-minor
//! localizations, and the bundle-theoretic structure built on it.
//!
//! For `σ ∈ Σ(n)` let `G = w_σ⁻¹ T`, `G^i_j = t^{σ(i)}_j`, and let `S_σ` be
//! generated by the principal (lower right corner) minors
//! `F_k = D^{σ{k..n}}_{k..n}`. Then `G = U A` with `U` upper unitriangular and
//! `A` lower triangular, where in terms of quantum minors
//!
//! ```text
//! a^i_j = (−q)^{p−1}   D^{σ{i..n}}_{{j,i+1..n}} F_{i+1}⁻¹          (i ≥ j)
//! u^i_j = (−q)^{p₁−p₂} D^{σ{i}∪σ{j+1..n}}_{{j..n}} F_j⁻¹           (i < j)
//! ```
//!
//! with `p` the position of `σ(i)` in the sorted row set of the minor, and
//! `p₂` that of `σ(j)` in `σ{j..n}`. Both come from
//! `|X|_{rc} = (−q)^{r−c} D(X) D(X^{r̂}_{ĉ})⁻¹`; `gauss_verify` certifies them.

mod comodule;
mod section;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::orelocal::{BorelLoc, Compatibility, OreEngine, OreFraction, OreSet, DEFAULT_ORE_BOUND};
use crate::qalgebra::{NcPoly, QMatrixAlgebra};
use crate::qminor::inversions;
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

pub use comodule::{cocycle_check, transition_matrix, Comodule, TransitionMatrix};

/// A permutation of `1..n`, stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `(n … 2 1)`
    pub fn reversal(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// All of `Σ(n)` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Self> {
        crate::qminor::permutations(n)
            .into_iter()
            .map(|(p, _)| Permutation(p.into_iter().map(|i| i + 1).collect()))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        inversions(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &s)| s == i + 1)
    }

    pub fn is_reversal(&self) -> bool {
        *self == Self::reversal(self.n())
    }

    /// `σ(S)` for a set of 1-based slots, sorted.
    pub fn image_sorted(&self, slots: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut v: Vec<usize> = slots.into_iter().map(|i| self.at(i)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// `"2,3,1"`, or `"id"` is not accepted here since `n` is unknown.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

fn position(sorted: &[usize], x: usize) -> i64 {
    sorted.iter().position(|&y| y == x).expect("label present") as i64 + 1
}

/// Generators `F_n, F_{n−1}, …, F_1` of `S_σ` (smallest first).
pub fn flag_ore_set<K: Scalar>(alg: &QMatrixAlgebra<K>, sigma: &Permutation) -> Result<OreSet<K>> {
    let n = alg.n();
    if sigma.n() != n {
        return Err(Error::DimensionMismatch(sigma.n(), n));
    }
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for k in (1..=n).rev() {
        let rows = sigma.image_sorted(k..=n);
        let cols: Vec<usize> = (k..=n).collect();
        gens.push(alg.minor(&rows, &cols));
        labels.push(format!("D[{}|{}]", join(&rows), join(&cols)));
    }
    OreSet::with_labels(format!("S_{sigma}"), gens, labels)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Index of `F_k` in [`flag_ore_set`].
pub fn flag_index(n: usize, k: usize) -> usize {
    n - k
}

/// A chart `S_σ⁻¹ G` with its Gauss factors.
pub struct CellChart<'a, K: Scalar> {
    pub sigma: Permutation,
    /// Block label of each index for a parabolic decomposition; `None` for Borel.
    pub blocks: Option<Vec<usize>>,
    engine: OreEngine<'a, K>,
    borel: BorelLoc<'a, K>,
    compat: Compatibility<K>,
    compat_report: SuiteReport,
    /// `u[i][j]`, 0-based
    pub u: Vec<Vec<OreFraction<K>>>,
    /// `a[i][j]`, 0-based
    pub a: Vec<Vec<OreFraction<K>>>,
}

impl<K: Scalar> fmt::Debug for CellChart<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellChart")
            .field("sigma", &self.sigma)
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl<'a, K: Scalar> CellChart<'a, K> {
    pub fn alg(&self) -> &'a QMatrixAlgebra<K> {
        self.engine.alg()
    }

    pub fn n(&self) -> usize {
        self.alg().n()
    }

    pub fn engine(&self) -> &OreEngine<'a, K> {
        &self.engine
    }

    pub fn borel(&self) -> &BorelLoc<'a, K> {
        &self.borel
    }

    pub fn compatibility(&self) -> &Compatibility<K> {
        &self.compat
    }

    pub fn compat_report(&self) -> &SuiteReport {
        &self.compat_report
    }

    pub fn set(&self) -> &OreSet<K> {
        self.engine.set()
    }

    /// `G^i_j = t^{σ(i)}_j`
    pub fn g(&self, i: usize, j: usize) -> NcPoly<K> {
        self.alg().gen(self.sigma.at(i), j)
    }

    /// The strictly upper entries of `U` as `((i, j), u^i_j)`, 1-based.
    pub fn u_entries(&self) -> Vec<((usize, usize), &OreFraction<K>)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if !self.u[i - 1][j - 1].is_zero() || self.blocks.is_none() {
                    out.push(((i, j), &self.u[i - 1][j - 1]));
                }
            }
        }
        out
    }

    pub fn render_matrix(&self, m: &[Vec<OreFraction<K>>]) -> String {
        m.iter()
            .map(|row| {
                let r: Vec<String> = row.iter().map(|x| x.render(self.set())).collect();
                format!("[{}]", r.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// `G = U A` entrywise, each identity decided by clearing the common
    /// left denominator (rightmost inverses are moved left first).
    pub fn gauss_verify(&self) -> SuiteReport {
        use rayon::prelude::*;
        let n = self.n();
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        let e = &self.engine;
        let cases = pairs
            .par_iter()
            .map(|&(i, j)| {
                CaseResult::timed(|| {
                    let name = format!("sigma={} G[{i},{j}] = (UA)[{i},{j}]", self.sigma);
                    let run = || -> Result<(bool, OreFraction<K>, OreFraction<K>)> {
                        let mut terms = Vec::new();
                        for k in 1..=n {
                            terms.push(e.fraction_multiply(&self.u[i - 1][k - 1], &self.a[k - 1][j - 1])?);
                        }
                        let ua = e.fraction_sum(terms)?;
                        let g = OreFraction::poly(self.g(i, j));
                        let diff = e.fraction_sub(&ua, &g)?;
                        Ok((diff.is_zero(), ua, diff))
                    };
                    match run() {
                        Ok((ok, ua, diff)) => CaseResult::check(
                            name,
                            ok,
                            ua.render(self.set()),
                            self.g(i, j).to_string(),
                            diff.render(self.set()),
                        ),
                        Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
                    }
                })
            })
            .collect();
        SuiteReport::with_cases("gauss", cases)
    }
}

/// Builds the chart for `σ`. `parabolic` is `I' ⊆ {1..n−1}`; `None` is the
/// Borel (finest) decomposition.
pub fn gauss_decompose<'a, K: Scalar>(
    alg: &'a QMatrixAlgebra<K>,
    sigma: &Permutation,
    parabolic: Option<&[usize]>,
) -> Result<CellChart<'a, K>> {
    let n = alg.n();
    let set = flag_ore_set(alg, sigma)?;
    let engine = OreEngine::new(alg, set, DEFAULT_ORE_BOUND)?;
    let borel = BorelLoc::new(alg)?;
    let (compat_report, compat) = engine.compat_check(&borel);
    let compat = compat.ok_or_else(|| {
        let w: Vec<String> = compat_report.failures().map(|c| c.witness.clone()).collect();
        Error::Incompatible(w.join("; "))
    })?;
    let blocks = match parabolic {
        None => None,
        Some(s) => {
            let b = alg.parabolic_blocks(s)?;
            let distinct = b.last().map_or(0, |&l| l + 1);
            (distinct < n).then_some(b)
        }
    };
    let zero = OreFraction::poly(alg.zero());
    let mut chart = CellChart {
        sigma: sigma.clone(),
        blocks: blocks.clone(),
        engine,
        borel,
        compat,
        compat_report,
        u: vec![vec![zero.clone(); n]; n],
        a: vec![vec![zero; n]; n],
    };
    match &blocks {
        None => borel_factors(&mut chart)?,
        Some(b) => block_factors(&mut chart, b)?,
    }
    Ok(chart)
}

/// `x F_k⁻¹` as a left fraction; `F_{n+1} = 1`.
fn over_flag<K: Scalar>(e: &OreEngine<'_, K>, x: NcPoly<K>, k: usize) -> Result<OreFraction<K>> {
    let n = e.alg().n();
    if k > n || x.is_zero() {
        return Ok(OreFraction::poly(x));
    }
    let (s, r) = e.right_to_left(&x, &[flag_index(n, k)])?;
    Ok(OreFraction::new(s, r))
}

fn borel_factors<K: Scalar>(chart: &mut CellChart<'_, K>) -> Result<()> {
    let n = chart.n();
    let alg = chart.alg();
    let sigma = chart.sigma.clone();
    for i in 1..=n {
        chart.u[i - 1][i - 1] = OreFraction::poly(alg.one());
        let rows = sigma.image_sorted(i..=n);
        let p = position(&rows, sigma.at(i));
        for j in 1..=i {
            let cols: Vec<usize> = std::iter::once(j).chain(i + 1..=n).collect();
            let x = alg.minor(&rows, &cols).scale(&alg.neg_q_pow(p - 1));
            chart.a[i - 1][j - 1] = over_flag(&chart.engine, x, i + 1)?;
        }
        for j in i + 1..=n {
            let rows_u = sigma.image_sorted(std::iter::once(i).chain(j + 1..=n));
            let p1 = position(&rows_u, sigma.at(i));
            let p2 = position(&sigma.image_sorted(j..=n), sigma.at(j));
            let cols: Vec<usize> = (j..=n).collect();
            let x = alg.minor(&rows_u, &cols).scale(&alg.neg_q_pow(p1 - p2));
            chart.u[i - 1][j - 1] = over_flag(&chart.engine, x, j)?;
        }
    }
    Ok(())
}

/// Block decomposition with at most two blocks `{1..m}`, `{m+1..n}`:
/// `A₂₂ = G₂₂`, `A₂₁ = G₂₁`, `U₁₂ = G₁₂ G₂₂⁻¹`, `A₁₁ = G₁₁ − U₁₂ G₂₁`.
fn block_factors<K: Scalar>(chart: &mut CellChart<'_, K>, blocks: &[usize]) -> Result<()> {
    let n = chart.n();
    let alg = chart.alg();
    let nblocks = blocks[n - 1] + 1;
    if nblocks > 2 {
        return Err(Error::Unsupported(format!(
            "parabolic decompositions with {nblocks} blocks"
        )));
    }
    let m = blocks.iter().filter(|&&b| b == 0).count();
    let e = &chart.engine;
    let one = OreFraction::poly(alg.one());
    for i in 1..=n {
        chart.u[i - 1][i - 1] = one.clone();
    }
    if nblocks == 1 {
        for i in 1..=n {
            for j in 1..=n {
                chart.a[i - 1][j - 1] = OreFraction::poly(chart.g(i, j));
            }
        }
        return Ok(());
    }
    for i in m + 1..=n {
        for j in 1..=n {
            chart.a[i - 1][j - 1] = OreFraction::poly(chart.g(i, j));
        }
    }
    // (G₂₂⁻¹)_{c,s} = (−q)^{c−σ(s)} D₂₂⁻¹ D^{R∖σ(s)}_{C∖c} in sorted positions
    let rows = chart.sigma.image_sorted(m + 1..=n);
    let cols: Vec<usize> = (m + 1..=n).collect();
    let d22 = flag_index(n, m + 1);
    let g22_inv = |c: usize, s: usize| -> OreFraction<K> {
        let r = chart.sigma.at(s);
        let rr: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let cc: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sign = alg.neg_q_pow(position(&cols, c) - position(&rows, r));
        OreFraction::new(vec![d22], alg.minor(&rr, &cc).scale(&sign))
    };
    for i in 1..=m {
        for s in m + 1..=n {
            let mut terms = Vec::new();
            for &c in &cols {
                terms.push(e.fraction_multiply(&OreFraction::poly(chart.g(i, c)), &g22_inv(c, s))?);
            }
            chart.u[i - 1][s - 1] = e.fraction_sum(terms)?;
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            let mut acc = OreFraction::poly(chart.g(i, j));
            for s in m + 1..=n {
                let t = e.fraction_multiply(&chart.u[i - 1][s - 1], &OreFraction::poly(chart.g(s, j)))?;
                acc = e.fraction_sub(&acc, &t)?;
            }
            chart.a[i - 1][j - 1] = acc;
        }
    }
    Ok(())
}

/// Charts keyed by `(σ, I')`, built once and shared.
pub struct ChartCache<'a, K: Scalar> {
    alg: &'a QMatrixAlgebra<K>,
    charts: Mutex<HashMap<(Permutation, Option<Vec<usize>>), Arc<CellChart<'a, K>>>>,
}

impl<'a, K: Scalar> ChartCache<'a, K> {
    pub fn new(alg: &'a QMatrixAlgebra<K>) -> Self {
        ChartCache {
            alg,
            charts: Mutex::new(HashMap::new()),
        }
    }

    pub fn alg(&self) -> &'a QMatrixAlgebra<K> {
        self.alg
    }

    pub fn get(&self, sigma: &Permutation, parabolic: Option<&[usize]>) -> Result<Arc<CellChart<'a, K>>> {
        let key = (sigma.clone(), parabolic.map(<[usize]>::to_vec));
        if let Some(c) = self.charts.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let chart = Arc::new(gauss_decompose(self.alg, sigma, parabolic)?);
        Ok(self.charts.lock().unwrap().entry(key).or_insert(chart).clone())
    }
}
