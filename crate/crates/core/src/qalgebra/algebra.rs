use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::poly::{Gen, GenIndex, Monomial, NcPoly, TensorPoly};

/// Right-hand side of an oriented relation `h g -> ...` for a descent `h > g`.
#[derive(Debug, Clone)]
pub(crate) enum Swap<K> {
    /// `h g = c * g h`
    Scaled(K),
    /// `h g = g h + c * x y` with `x <= y`
    Corrected(K, Gen, Gen),
    /// `h g = g h`
    Commute,
}

type Expansion<K> = Arc<Vec<(Monomial, K)>>;

/// An unnormalized polynomial: arbitrary words with coefficients.
pub type RawPoly<K> = Vec<(Vec<Gen>, K)>;

/// Which descent a rewriting step resolves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// The quantum matrix bialgebra `M_q(n)` over a coefficient field `K`, with
/// `q` fixed to a nonzero element of `K`.
pub struct QMatrixAlgebra<K: Scalar> {
    n: usize,
    q: K,
    q_inv: K,
    q_diff: K,
    memo: RwLock<HashMap<(Monomial, Gen), Expansion<K>>>,
    pub(crate) minors: RwLock<HashMap<(Vec<usize>, Vec<usize>), NcPoly<K>>>,
}

impl<K: Scalar> std::fmt::Debug for QMatrixAlgebra<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QMatrixAlgebra")
            .field("n", &self.n)
            .field("q", &self.q)
            .finish()
    }
}

impl<K: Scalar> QMatrixAlgebra<K> {
    pub fn new(n: usize, q: K) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::Unsupported(format!("matrix size {n}")));
        }
        let q_inv = q.inverse()?;
        let q_diff = q.minus(&q_inv);
        Ok(QMatrixAlgebra {
            n,
            q,
            q_inv,
            q_diff,
            memo: RwLock::new(HashMap::new()),
            minors: RwLock::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &K {
        &self.q
    }

    pub fn q_inv(&self) -> &K {
        &self.q_inv
    }

    /// `q - q^{-1}`
    pub fn q_diff(&self) -> &K {
        &self.q_diff
    }

    /// `q^e`
    pub fn q_pow(&self, e: i64) -> K {
        let base = if e < 0 { &self.q_inv } else { &self.q };
        let mut acc = K::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(base);
        }
        acc
    }

    /// `(-q)^e`
    pub fn neg_q_pow(&self, e: i64) -> K {
        let p = self.q_pow(e);
        if e.rem_euclid(2) == 1 {
            p.negate()
        } else {
            p
        }
    }

    pub fn pack(&self, row: usize, col: usize) -> Gen {
        GenIndex::new(row, col).pack(self.n)
    }

    pub fn unpack(&self, g: Gen) -> GenIndex {
        GenIndex::unpack(g, self.n)
    }

    pub fn check_index(&self, row: usize, col: usize) -> Result<()> {
        if row == 0 || col == 0 || row > self.n || col > self.n {
            return Err(Error::InvalidIndex(format!(
                "t[{row},{col}] with n = {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn gen(&self, row: usize, col: usize) -> NcPoly<K> {
        NcPoly::gen(self.n, row, col)
    }

    pub fn one(&self) -> NcPoly<K> {
        NcPoly::one(self.n)
    }

    pub fn zero(&self) -> NcPoly<K> {
        NcPoly::zero(self.n)
    }

    pub fn constant(&self, c: K) -> NcPoly<K> {
        NcPoly::constant(self.n, c)
    }

    pub fn all_gens(&self) -> Vec<Gen> {
        (0..(self.n * self.n) as Gen).collect()
    }

    /// Generators with `row >= col`.
    pub fn lower_gens(&self) -> Vec<Gen> {
        self.all_gens()
            .into_iter()
            .filter(|&g| !self.unpack(g).is_upper())
            .collect()
    }

    /// The oriented relation for the descent `h > g`.
    pub(crate) fn swap(&self, h: Gen, g: Gen) -> Swap<K> {
        debug_assert!(h > g);
        let GenIndex { row: a, col: c } = self.unpack(h);
        let GenIndex { row: b, col: d } = self.unpack(g);
        if a == b || c == d {
            Swap::Scaled(self.q_inv.clone())
        } else if c < d {
            Swap::Commute
        } else {
            // a > b, c > d: hg = gh - (q - q^{-1}) t^b_c t^a_d
            Swap::Corrected(self.q_diff.negate(), self.pack(b, c), self.pack(a, d))
        }
    }

    fn with_scalar(terms: &[(Monomial, K)], c: &K, out: &mut BTreeMap<Monomial, K>) {
        for (m, d) in terms {
            let v = d.times(c);
            add_into(out, m.clone(), v);
        }
    }

    /// Normal form of `m * g` for a standard monomial `m`.
    pub fn mono_times_gen(&self, m: &Monomial, g: Gen) -> Expansion<K> {
        if m.0.last().is_none_or(|&x| x <= g) {
            let mut w = m.0.clone();
            w.push(g);
            return Arc::new(vec![(Monomial(w), K::one())]);
        }
        let key = (m.clone(), g);
        if let Some(e) = self.memo.read().unwrap().get(&key) {
            return e.clone();
        }
        let (&x, rest) = m.0.split_last().unwrap();
        let rest = Monomial(rest.to_vec());
        let mut out = BTreeMap::new();
        match self.swap(x, g) {
            Swap::Scaled(c) => {
                let t = self.insert_pair(&rest, g, x);
                Self::with_scalar(&t, &c, &mut out);
            }
            Swap::Commute => {
                let t = self.insert_pair(&rest, g, x);
                Self::with_scalar(&t, &K::one(), &mut out);
            }
            Swap::Corrected(c, y, z) => {
                let t = self.insert_pair(&rest, g, x);
                Self::with_scalar(&t, &K::one(), &mut out);
                let t = self.insert_pair(&rest, y, z);
                Self::with_scalar(&t, &c, &mut out);
            }
        }
        let e: Expansion<K> = Arc::new(out.into_iter().collect());
        self.memo.write().unwrap().insert(key, e.clone());
        e
    }

    /// Normal form of `m * x * y` for standard `m`.
    fn insert_pair(&self, m: &Monomial, x: Gen, y: Gen) -> Vec<(Monomial, K)> {
        let mut out = BTreeMap::new();
        for (m1, c1) in self.mono_times_gen(m, x).iter() {
            for (m2, c2) in self.mono_times_gen(m1, y).iter() {
                add_into(&mut out, m2.clone(), c1.times(c2));
            }
        }
        out.into_iter().collect()
    }

    pub fn poly_times_gen(&self, x: &NcPoly<K>, g: Gen) -> NcPoly<K> {
        let mut out = BTreeMap::new();
        for (m, c) in x.terms() {
            for (m2, d) in self.mono_times_gen(m, g).iter() {
                add_into(&mut out, m2.clone(), c.times(d));
            }
        }
        NcPoly::from_terms(self.n, out)
    }

    /// Normal form of `x * w` for a word `w`.
    pub fn poly_times_word(&self, x: &NcPoly<K>, w: &[Gen]) -> NcPoly<K> {
        let mut acc = x.clone();
        for &g in w {
            if acc.is_zero() {
                break;
            }
            acc = self.poly_times_gen(&acc, g);
        }
        acc
    }

    /// Normal form of the concatenation product.
    pub fn multiply(&self, x: &NcPoly<K>, y: &NcPoly<K>) -> Result<NcPoly<K>> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch(x.n(), self.n));
        }
        if y.n() != self.n {
            return Err(Error::DimensionMismatch(y.n(), self.n));
        }
        Ok(self.mul(x, y))
    }

    /// [`multiply`](Self::multiply) for operands known to live in this algebra.
    pub fn mul(&self, x: &NcPoly<K>, y: &NcPoly<K>) -> NcPoly<K> {
        debug_assert!(x.n() == self.n && y.n() == self.n);
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        if let Some(c) = y.as_constant() {
            return x.scale(&c);
        }
        let mut acc = NcPoly::zero(self.n);
        for (m, c) in y.terms() {
            acc.add_scaled(&self.poly_times_word(x, m.gens()), c);
        }
        acc
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a NcPoly<K>>) -> NcPoly<K> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, x: &NcPoly<K>, e: usize) -> NcPoly<K> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Normal form of a raw polynomial (fast path through [`mul`](Self::mul)).
    pub fn normal_form(&self, raw: &RawPoly<K>) -> NcPoly<K> {
        let mut acc = self.zero();
        for (w, c) in raw {
            acc.add_scaled(&self.poly_times_word(&self.one(), w), c);
        }
        acc
    }

    /// One rewriting step on the descent at `pos` of `word`.
    pub fn rewrite_at(&self, word: &[Gen], pos: usize) -> RawPoly<K> {
        let (h, g) = (word[pos], word[pos + 1]);
        assert!(h > g, "no descent at position {pos}");
        let splice = |x: Gen, y: Gen| {
            let mut w = word.to_vec();
            w[pos] = x;
            w[pos + 1] = y;
            w
        };
        match self.swap(h, g) {
            Swap::Scaled(c) => vec![(splice(g, h), c)],
            Swap::Commute => vec![(splice(g, h), K::one())],
            Swap::Corrected(c, y, z) => vec![(splice(g, h), K::one()), (splice(y, z), c)],
        }
    }

    /// Reduces by explicit rewriting steps, resolving descents in the order
    /// given by `strategy`. Words rejected by `keep` are dropped after every
    /// step (used for quotients by monomial ideals).
    pub fn reduce_raw(
        &self,
        raw: RawPoly<K>,
        strategy: Strategy,
        keep: &dyn Fn(&[Gen]) -> bool,
    ) -> NcPoly<K> {
        let mut pending: BTreeMap<Vec<Gen>, K> = BTreeMap::new();
        let mut done = NcPoly::zero(self.n);
        let push = |pending: &mut BTreeMap<Vec<Gen>, K>, done: &mut NcPoly<K>, w: Vec<Gen>, c: K| {
            if !keep(&w) {
                return;
            }
            if w.windows(2).all(|p| p[0] <= p[1]) {
                done.add_term(Monomial(w), &c);
            } else {
                add_into(pending, w, c);
            }
        };
        for (w, c) in raw {
            push(&mut pending, &mut done, w, c);
        }
        while let Some((w, c)) = pending.pop_first() {
            let descents = (0..w.len() - 1).filter(|&i| w[i] > w[i + 1]);
            let pos = match strategy {
                Strategy::Leftmost => descents.min(),
                Strategy::Rightmost => descents.max(),
            }
            .expect("pending words are not standard");
            for (w2, d) in self.rewrite_at(&w, pos) {
                push(&mut pending, &mut done, w2, d.times(&c));
            }
        }
        done
    }

    /// `Δ(x)` with both legs normalized.
    pub fn comultiply(&self, x: &NcPoly<K>) -> TensorPoly<K> {
        self.coproduct_filtered(x, &|_| true)
    }

    /// `(id ⊗ π)Δ(x)` where `π` deletes right-leg monomials with an upper
    /// generator. Pruning is applied at every step, which is sound because
    /// those monomials span a two-sided ideal.
    pub fn coact_borel(&self, x: &NcPoly<K>) -> TensorPoly<K> {
        let n = self.n;
        self.coproduct_filtered(x, &move |g| !GenIndex::unpack(g, n).is_upper())
    }

    fn coproduct_filtered(&self, x: &NcPoly<K>, right_ok: &dyn Fn(Gen) -> bool) -> TensorPoly<K> {
        let n = self.n;
        let mut total = TensorPoly::zero(n);
        for (m, c) in x.terms() {
            let mut acc: BTreeMap<(Monomial, Monomial), K> = BTreeMap::new();
            acc.insert((Monomial::one(), Monomial::one()), c.clone());
            for &g in m.gens() {
                let GenIndex { row: i, col: j } = self.unpack(g);
                let mut next = BTreeMap::new();
                for k in 1..=n {
                    let (gl, gr) = (self.pack(i, k), self.pack(k, j));
                    if !right_ok(gr) {
                        continue;
                    }
                    for ((a, b), c) in &acc {
                        let left = self.mono_times_gen(a, gl);
                        let right = self.mono_times_gen(b, gr);
                        for (b2, d2) in right.iter() {
                            if !b2.gens().iter().all(|&h| right_ok(h)) {
                                continue;
                            }
                            for (a2, d1) in left.iter() {
                                add_into(&mut next, (a2.clone(), b2.clone()), c.times(d1).times(d2));
                            }
                        }
                    }
                }
                acc = next;
            }
            for ((a, b), c) in acc {
                total.add_term(a, b, &c);
            }
        }
        total
    }

    /// Product in `M_q ⊗ M_q`.
    pub fn tensor_mul(&self, x: &TensorPoly<K>, y: &TensorPoly<K>) -> TensorPoly<K> {
        let mut out = TensorPoly::zero(self.n);
        for ((a, b), c) in x.terms() {
            for ((a2, b2), d) in y.terms() {
                let l = self.mul(
                    &NcPoly::monomial(self.n, a.clone(), K::one()),
                    &NcPoly::monomial(self.n, a2.clone(), K::one()),
                );
                let r = self.mul(
                    &NcPoly::monomial(self.n, b.clone(), K::one()),
                    &NcPoly::monomial(self.n, b2.clone(), K::one()),
                );
                let cd = c.times(d);
                for (lm, lc) in l.terms() {
                    for (rm, rc) in r.terms() {
                        out.add_term(lm.clone(), rm.clone(), &cd.times(lc).times(rc));
                    }
                }
            }
        }
        out
    }

    /// Counit of a monomial: 1 if every generator is diagonal.
    pub fn counit_mono(&self, m: &Monomial) -> K {
        if m.gens().iter().all(|&g| self.unpack(g).is_diagonal()) {
            K::one()
        } else {
            K::zero()
        }
    }

    pub fn counit(&self, x: &NcPoly<K>) -> K {
        x.terms()
            .iter()
            .fold(K::zero(), |acc, (m, c)| acc.plus(&c.times(&self.counit_mono(m))))
    }

    /// Deletes every monomial containing an upper generator.
    pub fn borel_project(&self, x: &NcPoly<K>) -> BorelPoly<K> {
        BorelPoly(x.filter(|m| self.is_lower_word(m.gens())))
    }

    pub fn is_lower_word(&self, w: &[Gen]) -> bool {
        w.iter().all(|&g| !self.unpack(g).is_upper())
    }

    pub fn borel_mul(&self, x: &BorelPoly<K>, y: &BorelPoly<K>) -> BorelPoly<K> {
        self.borel_project(&self.mul(&x.0, &y.0))
    }

    /// Block labels for `I ⊆ {1..n-1}`: `i` and `i+1` share a block iff `i ∈ I`.
    pub fn parabolic_blocks(&self, subset: &[usize]) -> Result<Vec<usize>> {
        if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i >= self.n) {
            return Err(Error::InvalidIndex(format!(
                "parabolic label {bad} outside 1..{}",
                self.n - 1
            )));
        }
        let mut block = vec![0; self.n];
        for i in 1..self.n {
            block[i] = block[i - 1] + usize::from(!subset.contains(&i));
        }
        Ok(block)
    }

    /// Deletes monomials containing an upper generator outside the diagonal
    /// blocks determined by `subset`.
    pub fn parabolic_project(&self, x: &NcPoly<K>, subset: &[usize]) -> Result<NcPoly<K>> {
        let block = self.parabolic_blocks(subset)?;
        Ok(x.filter(|m| {
            m.gens().iter().all(|&g| {
                let GenIndex { row, col } = self.unpack(g);
                row >= col || block[row - 1] == block[col - 1]
            })
        }))
    }
}

/// An element of the quantum Borel quotient, stored as a polynomial in the
/// lower-triangular generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BorelPoly<K: Scalar>(pub NcPoly<K>);

impl<K: Scalar> BorelPoly<K> {
    pub fn inner(&self) -> &NcPoly<K> {
        &self.0
    }

    pub fn into_inner(self) -> NcPoly<K> {
        self.0
    }
}

impl<K: Scalar> std::fmt::Display for BorelPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0.to_string().replace("t[", "b["))
    }
}

pub(crate) fn add_into<T: Ord, K: Scalar>(map: &mut BTreeMap<T, K>, key: T, c: K) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().plus(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}
