//! Computational Ore localization at sets of quantum minors.
//!
//! A left fraction `s⁻¹r` stores its denominator as a word over the declared
//! generators of an [`OreSet`]. All arithmetic reduces to one primitive: given
//! `r` and a generator `g`, find a word `w` and a polynomial `r'` with
//! `r' g = w r`, i.e. `r g⁻¹ = w⁻¹ r'`. The unknown `r'` is searched in the
//! graded piece forced by bidegrees, which turns the Ore condition into an
//! exact linear system.

mod bloc;
mod coaction;
mod linear;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use crate::error::{Error, Result};
use crate::qalgebra::{Bidegree, NcPoly, QMatrixAlgebra};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

pub use bloc::{BorelLoc, DiagTable, LocBorel, LocMono};
pub use coaction::{CoactedFraction, Compatibility};
pub use linear::{graded_basis, Echelon};

/// Default bound on the number of Ore generators in a single witness.
pub const DEFAULT_ORE_BOUND: usize = 3;

/// Generators of a multiplicative Ore set (1 is implicit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreSet<K: Scalar> {
    pub name: String,
    gens: Vec<NcPoly<K>>,
    labels: Vec<String>,
    bidegrees: Vec<Bidegree>,
}

impl<K: Scalar> OreSet<K> {
    /// Generators must be nonzero and bidegree-homogeneous.
    pub fn new(name: impl Into<String>, gens: Vec<NcPoly<K>>) -> Result<Self> {
        let labels = gens.iter().map(|g| g.to_string()).collect();
        Self::with_labels(name, gens, labels)
    }

    pub fn with_labels(name: impl Into<String>, gens: Vec<NcPoly<K>>, labels: Vec<String>) -> Result<Self> {
        let mut bidegrees = Vec::new();
        for g in &gens {
            bidegrees.push(g.bidegree().ok_or_else(|| {
                Error::Unsupported(format!("Ore generator {g} is zero or inhomogeneous"))
            })?);
        }
        Ok(OreSet {
            name: name.into(),
            gens,
            labels,
            bidegrees,
        })
    }

    pub fn gens(&self) -> &[NcPoly<K>] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, p: &NcPoly<K>) -> Option<usize> {
        self.gens.iter().position(|g| g == p)
    }

    /// `S ∨ T`: generators of both, without repetition, `self`'s first.
    /// Returns the union and the index map for `other`'s generators.
    pub fn union(&self, other: &Self) -> (Self, Vec<usize>) {
        let mut u = self.clone();
        u.name = format!("{}|{}", self.name, other.name);
        let mut map = Vec::new();
        for (i, g) in other.gens.iter().enumerate() {
            match u.index_of(g) {
                Some(j) => map.push(j),
                None => {
                    map.push(u.gens.len());
                    u.gens.push(g.clone());
                    u.labels.push(other.labels[i].clone());
                    u.bidegrees.push(other.bidegrees[i].clone());
                }
            }
        }
        (u, map)
    }

    pub fn word_bidegree(&self, word: &[usize]) -> Bidegree {
        let n = self.gens.first().map_or(0, NcPoly::n);
        word.iter()
            .fold(Bidegree::zero(n), |acc, &i| acc.add(&self.bidegrees[i]))
    }

    pub fn render_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&i| format!("({})", self.labels[i]))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The left fraction `s⁻¹ r`, `s` the product of the generators in `denom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OreFraction<K: Scalar> {
    pub denom: Vec<usize>,
    pub num: NcPoly<K>,
}

impl<K: Scalar> OreFraction<K> {
    pub fn poly(num: NcPoly<K>) -> Self {
        OreFraction {
            denom: Vec::new(),
            num,
        }
    }

    pub fn new(denom: Vec<usize>, num: NcPoly<K>) -> Self {
        OreFraction { denom, num }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &K) -> Self {
        OreFraction {
            denom: self.denom.clone(),
            num: self.num.scale(c),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().negate())
    }

    /// Renames denominator indices, e.g. into a union set.
    pub fn reindex(&self, map: &[usize]) -> Self {
        OreFraction {
            denom: self.denom.iter().map(|&i| map[i]).collect(),
            num: self.num.clone(),
        }
    }

    pub fn render(&self, set: &OreSet<K>) -> String {
        if self.denom.is_empty() {
            self.num.to_string()
        } else {
            format!("inv({})*({})", set.render_word(&self.denom), self.num)
        }
    }
}

/// Which Ore condition to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `r' g = w r`
    Left,
    /// `g r' = r w`
    Right,
}

/// A verified witness of an Ore condition for one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreWitness<K: Scalar> {
    pub word: Vec<usize>,
    pub r_prime: NcPoly<K>,
}

type SolveKey<K> = (NcPoly<K>, usize, Side);

/// Fraction arithmetic over one Ore set.
pub struct OreEngine<'a, K: Scalar> {
    alg: &'a QMatrixAlgebra<K>,
    set: OreSet<K>,
    bound: usize,
    words: RwLock<HashMap<Vec<usize>, NcPoly<K>>>,
    echelons: RwLock<HashMap<(Bidegree, usize, Side), Arc<(Vec<crate::qalgebra::Monomial>, Echelon<K>)>>>,
    solved: Mutex<HashMap<SolveKey<K>, Option<OreWitness<K>>>>,
}

impl<K: Scalar> fmt::Debug for OreEngine<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OreEngine")
            .field("set", &self.set.name)
            .field("bound", &self.bound)
            .finish()
    }
}

impl<'a, K: Scalar> OreEngine<'a, K> {
    pub fn new(alg: &'a QMatrixAlgebra<K>, set: OreSet<K>, bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Unsupported("Ore bound must be at least 1".into()));
        }
        if let Some(g) = set.gens.iter().find(|g| g.n() != alg.n()) {
            return Err(Error::DimensionMismatch(g.n(), alg.n()));
        }
        Ok(OreEngine {
            alg,
            set,
            bound,
            words: RwLock::new(HashMap::new()),
            echelons: RwLock::new(HashMap::new()),
            solved: Mutex::new(HashMap::new()),
        })
    }

    pub fn alg(&self) -> &'a QMatrixAlgebra<K> {
        self.alg
    }

    pub fn set(&self) -> &OreSet<K> {
        &self.set
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The product of the generators in `word`.
    pub fn word_poly(&self, word: &[usize]) -> NcPoly<K> {
        if let Some(p) = self.words.read().unwrap().get(word) {
            return p.clone();
        }
        let p = match word.split_last() {
            None => self.alg.one(),
            Some((&last, rest)) => self.alg.mul(&self.word_poly(rest), &self.set.gens[last]),
        };
        self.words.write().unwrap().insert(word.to_vec(), p.clone());
        p
    }

    fn echelon(&self, b: &Bidegree, g: usize, side: Side) -> Arc<(Vec<crate::qalgebra::Monomial>, Echelon<K>)> {
        let key = (b.clone(), g, side);
        if let Some(e) = self.echelons.read().unwrap().get(&key) {
            return e.clone();
        }
        let basis = graded_basis(b);
        let gen = &self.set.gens[g];
        let mut ech = Echelon::new();
        for m in &basis {
            let mp = NcPoly::monomial(self.alg.n(), m.clone(), K::one());
            ech.push(match side {
                Side::Left => self.alg.mul(&mp, gen),
                Side::Right => self.alg.mul(gen, &mp),
            });
        }
        let e = Arc::new((basis, ech));
        self.echelons.write().unwrap().insert(key, e.clone());
        e
    }

    fn candidate_words(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.set.len();
        (1..=self.bound).flat_map(move |len| {
            let total = k.pow(len as u32);
            (0..total).map(move |mut code| {
                let mut w = vec![0; len];
                for slot in w.iter_mut().rev() {
                    *slot = code % k;
                    code /= k;
                }
                w
            })
        })
    }

    /// Solves the Ore condition for `r` and the generator `g`: on the left
    /// `r' g = w r`, on the right `g r' = r w`. Words are tried by length,
    /// then lexicographically; the result is re-verified by multiplication.
    pub fn solve_gen(&self, r: &NcPoly<K>, g: usize, side: Side) -> Result<OreWitness<K>> {
        let key = (r.clone(), g, side);
        if let Some(hit) = self.solved.lock().unwrap().get(&key) {
            return hit.clone().ok_or(Error::OreNotFound { bound: self.bound });
        }
        let found = self.search(r, g, side);
        self.solved.lock().unwrap().insert(key, found.clone());
        found.ok_or(Error::OreNotFound { bound: self.bound })
    }

    fn search(&self, r: &NcPoly<K>, g: usize, side: Side) -> Option<OreWitness<K>> {
        let parts = r.homogeneous_parts();
        let gb = &self.set.bidegrees[g];
        'words: for w in self.candidate_words() {
            let wb = self.set.word_bidegree(&w);
            let mut targets = Vec::new();
            for b in parts.keys() {
                let need = wb.add(b).sub(gb);
                if !need.is_nonnegative() {
                    continue 'words;
                }
                targets.push(need);
            }
            let wp = self.word_poly(&w);
            let mut r_prime = self.alg.zero();
            for ((_, part), need) in parts.iter().zip(&targets) {
                let target = match side {
                    Side::Left => self.alg.mul(&wp, part),
                    Side::Right => self.alg.mul(part, &wp),
                };
                let ech = self.echelon(need, g, side);
                let Some(sol) = ech.1.solve(&target) else {
                    continue 'words;
                };
                for (i, c) in sol {
                    r_prime.add_term(ech.0[i].clone(), &c);
                }
            }
            let (lhs, rhs) = match side {
                Side::Left => (self.alg.mul(&r_prime, &self.set.gens[g]), self.alg.mul(&wp, r)),
                Side::Right => (self.alg.mul(&self.set.gens[g], &r_prime), self.alg.mul(r, &wp)),
            };
            assert_eq!(lhs, rhs, "Ore witness failed re-verification");
            return Some(OreWitness { word: w, r_prime });
        }
        None
    }

    /// Left Ore condition for a word: `r' s = s' r` with `s` the product of
    /// `word`. Equivalently `r s⁻¹ = s'⁻¹ r'`; returns `(s', r')`.
    pub fn ore_solve(&self, r: &NcPoly<K>, word: &[usize]) -> Result<(Vec<usize>, NcPoly<K>)> {
        self.right_to_left(r, word)
    }

    /// Rewrites the right fraction `r s⁻¹` as a left fraction `s'⁻¹ r'`.
    pub fn right_to_left(&self, r: &NcPoly<K>, word: &[usize]) -> Result<(Vec<usize>, NcPoly<K>)> {
        // r g_k⁻¹ ⋯ g_1⁻¹ : peel inverses left to right
        let mut denom: Vec<usize> = Vec::new();
        let mut num = r.clone();
        for &g in word.iter().rev() {
            let wit = self.solve_gen(&num, g, Side::Left)?;
            let mut d = wit.word;
            d.extend(denom);
            denom = d;
            num = wit.r_prime;
        }
        Ok((denom, num))
    }

    pub fn fraction_multiply(&self, x: &OreFraction<K>, y: &OreFraction<K>) -> Result<OreFraction<K>> {
        if x.is_zero() || y.is_zero() {
            return Ok(OreFraction::poly(self.alg.zero()));
        }
        let (mut s, r) = self.right_to_left(&x.num, &y.denom)?;
        s.extend(&x.denom);
        Ok(OreFraction::new(s, self.alg.mul(&r, &y.num)))
    }

    pub fn fraction_add(&self, x: &OreFraction<K>, y: &OreFraction<K>) -> Result<OreFraction<K>> {
        if x.is_zero() {
            return Ok(y.clone());
        }
        if y.is_zero() {
            return Ok(x.clone());
        }
        if x.denom == y.denom {
            return Ok(OreFraction::new(x.denom.clone(), x.num.add(&y.num)));
        }
        if x.denom.is_empty() {
            let s = self.word_poly(&y.denom);
            return Ok(OreFraction::new(y.denom.clone(), self.alg.mul(&s, &x.num).add(&y.num)));
        }
        if y.denom.is_empty() {
            let s = self.word_poly(&x.denom);
            return Ok(OreFraction::new(x.denom.clone(), x.num.add(&self.alg.mul(&s, &y.num))));
        }
        // s1 s2⁻¹ = s̃⁻¹ r̃, so s̃ s1 = r̃ s2
        let (st, rt) = self.right_to_left(&self.word_poly(&x.denom), &y.denom)?;
        let num = self
            .alg
            .mul(&self.word_poly(&st), &x.num)
            .add(&self.alg.mul(&rt, &y.num));
        let mut denom = st;
        denom.extend(&x.denom);
        Ok(OreFraction::new(denom, num))
    }

    pub fn fraction_sub(&self, x: &OreFraction<K>, y: &OreFraction<K>) -> Result<OreFraction<K>> {
        self.fraction_add(x, &y.neg())
    }

    /// Decided through a common denominator; sound because the algebra is a
    /// domain, so `s⁻¹ r = 0` exactly when `r = 0`.
    pub fn fraction_equal(&self, x: &OreFraction<K>, y: &OreFraction<K>) -> Result<bool> {
        Ok(self.fraction_sub(x, y)?.is_zero())
    }

    pub fn fraction_sum(&self, xs: impl IntoIterator<Item = OreFraction<K>>) -> Result<OreFraction<K>> {
        let mut acc = OreFraction::poly(self.alg.zero());
        for x in xs {
            acc = self.fraction_add(&acc, &x)?;
        }
        Ok(acc)
    }

    pub fn fraction_product(&self, xs: impl IntoIterator<Item = OreFraction<K>>) -> Result<OreFraction<K>> {
        let mut acc = OreFraction::poly(self.alg.one());
        for x in xs {
            acc = self.fraction_multiply(&acc, &x)?;
        }
        Ok(acc)
    }

    /// `x` times the inverse of the generator word on the right.
    pub fn times_inverse(&self, x: &OreFraction<K>, word: &[usize]) -> Result<OreFraction<K>> {
        self.fraction_multiply(x, &OreFraction::new(word.to_vec(), self.alg.one()))
    }

    /// `x s` for the product `s` of `word`: clears a right denominator.
    pub fn times_word(&self, x: &OreFraction<K>, word: &[usize]) -> Result<OreFraction<K>> {
        self.fraction_multiply(x, &OreFraction::poly(self.word_poly(word)))
    }

    /// Rewrites `xs` over one common left denominator.
    pub fn common_denominator(&self, xs: &[OreFraction<K>]) -> Result<(Vec<usize>, Vec<NcPoly<K>>)> {
        let mut denom: Vec<usize> = Vec::new();
        for x in xs {
            if x.denom == denom || x.denom.is_empty() {
                continue;
            }
            if denom.is_empty() {
                denom = x.denom.clone();
                continue;
            }
            // t̃ d = r̃ s: new common denominator t̃ d
            let (mut st, _) = self.right_to_left(&self.word_poly(&denom), &x.denom)?;
            st.extend(&denom);
            denom = st;
        }
        let d = self.word_poly(&denom);
        let mut nums = Vec::new();
        for x in xs {
            // d = p s, so d s⁻¹ r = p r
            let p = self.right_divide(&d, &x.denom)?;
            nums.push(self.alg.mul(&p, &x.num));
        }
        Ok((denom, nums))
    }

    /// `p` with `p s = d` for the product `s` of `word`.
    pub fn right_divide(&self, d: &NcPoly<K>, word: &[usize]) -> Result<NcPoly<K>> {
        let mut cur = d.clone();
        for &g in word.iter().rev() {
            let mut out = self.alg.zero();
            for (b, part) in cur.homogeneous_parts() {
                let need = b.sub(&self.set.bidegrees[g]);
                let ech = self.echelon(&need, g, Side::Left);
                let sol = ech.1.solve(&part).ok_or_else(|| {
                    Error::Unsupported(format!("{} does not divide on the right", self.set.labels[g]))
                })?;
                for (i, c) in sol {
                    out.add_term(ech.0[i].clone(), &c);
                }
            }
            cur = out;
        }
        Ok(cur)
    }

    /// `p` with `s p = r` for the product `s` of `word`.
    pub fn left_divide(&self, r: &NcPoly<K>, word: &[usize]) -> Result<NcPoly<K>> {
        let mut cur = r.clone();
        for &g in word {
            let mut out = self.alg.zero();
            for (b, part) in cur.homogeneous_parts() {
                let need = b.sub(&self.set.bidegrees[g]);
                let ech = self.echelon(&need, g, Side::Right);
                let sol = ech.1.solve(&part).ok_or_else(|| {
                    Error::Unsupported(format!("{} does not divide on the left", self.set.labels[g]))
                })?;
                for (i, c) in sol {
                    out.add_term(ech.0[i].clone(), &c);
                }
            }
            cur = out;
        }
        Ok(cur)
    }

    /// Samples both Ore conditions for every pair
    /// (algebra generator, Ore generator), each witness re-verified.
    pub fn ore_condition_suite(&self) -> SuiteReport {
        use rayon::prelude::*;
        let n = self.alg.n();
        let jobs: Vec<(usize, usize, usize, Side)> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .flat_map(|(i, j)| (0..self.set.len()).map(move |g| (i, j, g)))
            .flat_map(|(i, j, g)| [Side::Left, Side::Right].map(|s| (i, j, g, s)))
            .collect();
        let cases = jobs
            .par_iter()
            .map(|&(i, j, g, side)| {
                CaseResult::timed(|| {
                    let r = self.alg.gen(i, j);
                    let name = format!("{side:?} t[{i},{j}] vs {}", self.set.labels[g]);
                    match self.solve_gen(&r, g, side) {
                        Ok(w) => {
                            let wp = self.word_poly(&w.word);
                            let gp = &self.set.gens[g];
                            let (lhs, rhs) = match side {
                                Side::Left => (self.alg.mul(&w.r_prime, gp), self.alg.mul(&wp, &r)),
                                Side::Right => (self.alg.mul(gp, &w.r_prime), self.alg.mul(&r, &wp)),
                            };
                            CaseResult::check(
                                name,
                                lhs == rhs,
                                format!("s' = {}, r' = {}", self.set.render_word(&w.word), w.r_prime),
                                rhs.to_string(),
                                lhs.sub(&rhs).to_string(),
                            )
                        }
                        Err(e) => CaseResult::inconclusive(name, "", "", e.to_string()),
                    }
                })
            })
            .collect();
        SuiteReport::with_cases("ore", cases)
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
    fn ore_solve_examples() {
        let a = alg(2);
        let set = OreSet::new("d", vec![a.gen(2, 2)]).unwrap();
        let e = OreEngine::new(&a, set, 3).unwrap();
        // d c = q⁻¹ c d
        let (s, r) = e.ore_solve(&a.gen(2, 1), &[0]).unwrap();
        assert_eq!(s, vec![0]);
        assert_eq!(r, a.gen(2, 1).scale(a.q_inv()));
        // d² a = (ad − (q − q⁻¹)(1 + q⁻²) bc) d
        let (s, r) = e.ore_solve(&a.gen(1, 1), &[0]).unwrap();
        assert_eq!(s, vec![0, 0]);
        let coef = a.q_diff().times(&ScalarQ::one().plus(&a.q_inv().times(a.q_inv())));
        let expect = a
            .mul(&a.gen(1, 1), &a.gen(2, 2))
            .sub(&a.mul(&a.gen(1, 2), &a.gen(2, 1)).scale(&coef));
        assert_eq!(r, expect);
        // r = s
        let (s, r) = e.ore_solve(&a.gen(2, 2), &[0]).unwrap();
        assert_eq!((s, r), (vec![0], a.gen(2, 2)));
    }

    #[test]
    fn fraction_examples() {
        let a = alg(2);
        let set = OreSet::new("d", vec![a.gen(2, 2)]).unwrap();
        let e = OreEngine::new(&a, set, 3).unwrap();
        let f = |w: Vec<usize>, p: NcPoly<ScalarQ>| OreFraction::new(w, p);
        let dinv = f(vec![0], a.one());
        assert_eq!(e.fraction_multiply(&dinv, &dinv).unwrap(), f(vec![0, 0], a.one()));
        let x = f(vec![0], a.gen(1, 2));
        let y = f(vec![0], a.gen(2, 1));
        assert_eq!(e.fraction_add(&x, &y).unwrap(), f(vec![0], a.gen(1, 2).add(&a.gen(2, 1))));
        // d⁻¹ (q⁻¹ c d) = c
        let lhs = f(vec![0], a.mul(&a.gen(2, 1), &a.gen(2, 2)).scale(a.q_inv()));
        assert!(e.fraction_equal(&lhs, &OreFraction::poly(a.gen(2, 1))).unwrap());
        assert!(!e.fraction_equal(&x, &y).unwrap());
        // (d⁻¹b)(d⁻¹c) d = d⁻¹ b (q c), since c d = q d c
        let p = e.fraction_multiply(&x, &y).unwrap();
        let back = e.times_word(&p, &[0]).unwrap();
        let expect = e
            .fraction_multiply(&x, &OreFraction::poly(a.gen(2, 1).scale(a.q())))
            .unwrap();
        assert!(e.fraction_equal(&back, &expect).unwrap());
    }

    #[test]
    fn common_denominator_recovers_values() {
        let a = alg(2);
        let set = OreSet::new("d,D", vec![a.gen(2, 2), a.qdet()]).unwrap();
        let e = OreEngine::new(&a, set, 3).unwrap();
        let xs = vec![
            OreFraction::new(vec![0], a.gen(1, 2)),
            OreFraction::new(vec![1], a.gen(1, 1)),
            OreFraction::poly(a.gen(2, 1)),
        ];
        let (d, nums) = e.common_denominator(&xs).unwrap();
        for (x, num) in xs.iter().zip(nums) {
            assert!(e.fraction_equal(x, &OreFraction::new(d.clone(), num)).unwrap());
        }
    }
}
