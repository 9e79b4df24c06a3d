use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{renders_simple, Scalar};

/// Generator `t^row_col` packed as `(row - 1) * n + (col - 1)`. The packed
/// order is the (row, col) lexicographic order used by the rewriting system.
pub type Gen = u8;

/// A generator label, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    pub row: usize,
    pub col: usize,
}

impl GenIndex {
    pub fn new(row: usize, col: usize) -> Self {
        GenIndex { row, col }
    }

    pub fn pack(self, n: usize) -> Gen {
        debug_assert!(self.row >= 1 && self.row <= n && self.col >= 1 && self.col <= n);
        ((self.row - 1) * n + (self.col - 1)) as Gen
    }

    pub fn unpack(g: Gen, n: usize) -> Self {
        let g = g as usize;
        GenIndex {
            row: g / n + 1,
            col: g % n + 1,
        }
    }

    pub fn is_upper(self) -> bool {
        self.row < self.col
    }

    pub fn is_diagonal(self) -> bool {
        self.row == self.col
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{},{}]", self.row, self.col)
    }
}

/// A word in the generators. Standard monomials are nondecreasing words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Gen>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_gens(gens: impl IntoIterator<Item = Gen>) -> Self {
        Monomial(gens.into_iter().collect())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn render(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&g| GenIndex::unpack(g, n).to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the word.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Row and column occurrence counts of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub rowdeg: Vec<i32>,
    pub coldeg: Vec<i32>,
}

impl Bidegree {
    pub fn zero(n: usize) -> Self {
        Bidegree {
            rowdeg: vec![0; n],
            coldeg: vec![0; n],
        }
    }

    pub fn of(m: &Monomial, n: usize) -> Self {
        let mut b = Self::zero(n);
        for &g in m.gens() {
            let gi = GenIndex::unpack(g, n);
            b.rowdeg[gi.row - 1] += 1;
            b.coldeg[gi.col - 1] += 1;
        }
        b
    }

    pub fn total(&self) -> i32 {
        self.rowdeg.iter().sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        Bidegree {
            rowdeg: self.rowdeg.iter().zip(&o.rowdeg).map(|(a, b)| a + b).collect(),
            coldeg: self.coldeg.iter().zip(&o.coldeg).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Bidegree {
            rowdeg: self.rowdeg.iter().zip(&o.rowdeg).map(|(a, b)| a - b).collect(),
            coldeg: self.coldeg.iter().zip(&o.coldeg).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rowdeg.iter().chain(&self.coldeg).all(|&d| d >= 0)
    }
}

/// Renders `coeff * body` as a signed product term (`body` may be `"1"`).
pub(crate) fn render_term<K: Scalar>(c: &K, body: &str) -> String {
    let cs = c.to_string();
    if body == "1" {
        return if renders_simple(c) { cs } else { format!("({cs})") };
    }
    if c.is_one() {
        body.to_string()
    } else if c.negate().is_one() {
        format!("-{body}")
    } else if renders_simple(c) {
        format!("{cs}*{body}")
    } else {
        format!("({cs})*{body}")
    }
}

/// Joins signed terms with ` + ` / ` - `.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Element of the quantum matrix algebra in normal form: a linear combination
/// of standard monomials with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly<K: Scalar> {
    n: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> NcPoly<K> {
    pub fn zero(n: usize) -> Self {
        NcPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, K::one())
    }

    pub fn constant(n: usize, c: K) -> Self {
        Self::monomial(n, Monomial::one(), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: K) -> Self {
        debug_assert!(m.is_standard());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        NcPoly { n, terms }
    }

    pub fn gen(n: usize, row: usize, col: usize) -> Self {
        let g = GenIndex::new(row, col).pack(n);
        Self::monomial(n, Monomial(vec![g]), K::one())
    }

    /// Builds from standard monomials; zero coefficients are dropped and
    /// repeated monomials summed.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            debug_assert!(m.is_standard());
            p.add_term(m, &c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, K> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, K> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// The coefficient when `self` is a scalar multiple of the unit.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), &d.times(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &K::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &K::one().negate());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&K::one().negate())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        NcPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.times(c)))
                .collect(),
        }
    }

    /// Largest monomial length (0 for constants and for zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    /// Splits into bidegree-homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<Bidegree, NcPoly<K>> {
        let mut parts: BTreeMap<Bidegree, NcPoly<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(Bidegree::of(m, self.n))
                .or_insert_with(|| NcPoly::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// The common bidegree of all terms, if homogeneous and nonzero.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| Bidegree::of(m, self.n));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> NcPoly<L> {
        let mut p = NcPoly::zero(self.n);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), &f(c));
        }
        p
    }

    /// The first (smallest) term, used to extract scalar ratios.
    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        NcPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `c` with `self = c * other`, if `self` is a scalar multiple of a nonzero `other`.
    pub fn ratio_to(&self, other: &Self) -> Option<K> {
        let (m, c) = other.leading_term()?;
        let k = self.coeff(m).try_div(c).ok()?;
        (other.scale(&k) == *self).then_some(k)
    }
}

impl<K: Scalar> fmt::Display for NcPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| render_term(c, &m.render(self.n)));
        f.write_str(&join_terms(terms))
    }
}

/// Element of `M_q ⊗ M_q`; both legs are standard monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorPoly<K: Scalar> {
    n: usize,
    terms: BTreeMap<(Monomial, Monomial), K>,
}

impl<K: Scalar> TensorPoly<K> {
    pub fn zero(n: usize) -> Self {
        TensorPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: &K) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let s = match self.terms.get(&key) {
            Some(d) => d.plus(c),
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn simple(x: &NcPoly<K>, y: &NcPoly<K>) -> Self {
        let mut t = Self::zero(x.n());
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                t.add_term(a.clone(), b.clone(), &c.times(d));
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for ((a, b), c) in &other.terms {
            r.add_term(a.clone(), b.clone(), c);
        }
        r
    }

    /// Applies a linear functional to the left leg.
    pub fn contract_left(&self, f: impl Fn(&Monomial) -> K) -> NcPoly<K> {
        let mut p = NcPoly::zero(self.n);
        for ((a, b), c) in &self.terms {
            p.add_term(b.clone(), &c.times(&f(a)));
        }
        p
    }

    /// Applies a linear functional to the right leg.
    pub fn contract_right(&self, f: impl Fn(&Monomial) -> K) -> NcPoly<K> {
        let mut p = NcPoly::zero(self.n);
        for ((a, b), c) in &self.terms {
            p.add_term(a.clone(), &c.times(&f(b)));
        }
        p
    }
}

impl<K: Scalar> fmt::Display for TensorPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|((a, b), c)| {
            let body = format!("{} ⊗ {}", a.render(self.n), b.render(self.n));
            render_term(c, &format!("({body})"))
        });
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarQ;

    #[test]
    fn bidegree_counts() {
        let n = 2;
        let b = GenIndex::new(1, 2).pack(n);
        let c = GenIndex::new(2, 1).pack(n);
        let a = GenIndex::new(1, 1).pack(n);
        let bd = Bidegree::of(&Monomial(vec![b, c]), n);
        assert_eq!(bd.rowdeg, vec![1, 1]);
        assert_eq!(bd.coldeg, vec![1, 1]);
        assert_eq!(Bidegree::of(&Monomial::one(), n), Bidegree::zero(n));
        let bd = Bidegree::of(&Monomial(vec![a, b]), n);
        assert_eq!(bd.rowdeg, vec![2, 0]);
        assert_eq!(bd.coldeg, vec![1, 1]);
    }

    #[test]
    fn rendering() {
        let p: NcPoly<ScalarQ> = NcPoly::gen(2, 1, 1)
            .sub(&NcPoly::gen(2, 1, 2).scale(&ScalarQ::q()));
        assert_eq!(p.to_string(), "t[1,1] - q*t[1,2]");
        assert_eq!(NcPoly::<ScalarQ>::zero(2).to_string(), "0");
    }

    #[test]
    fn graded_order() {
        assert!(Monomial(vec![3]) < Monomial(vec![0, 0]));
        assert!(Monomial(vec![0, 1]) < Monomial(vec![0, 2]));
    }
}
