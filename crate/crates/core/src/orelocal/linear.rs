//! Graded pieces and exact linear solving over standard monomials.

use std::collections::BTreeMap;

use crate::qalgebra::{Bidegree, Monomial, NcPoly};
use crate::scalar::Scalar;

/// All standard monomials with the given row and column degrees, i.e. the
/// nonnegative integer matrices with those margins.
pub fn graded_basis(b: &Bidegree) -> Vec<Monomial> {
    let n = b.rowdeg.len();
    if !b.is_nonnegative() || b.rowdeg.iter().sum::<i32>() != b.coldeg.iter().sum::<i32>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![0i32; n * n];
    let mut colrem = b.coldeg.clone();
    fill(0, 0, n, b, &mut table, &mut colrem, b.rowdeg[0], &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    row: usize,
    col: usize,
    n: usize,
    b: &Bidegree,
    table: &mut [i32],
    colrem: &mut [i32],
    rowrem: i32,
    out: &mut Vec<Monomial>,
) {
    if row == n {
        if colrem.iter().all(|&c| c == 0) {
            let mut w = Vec::new();
            for (g, &e) in table.iter().enumerate() {
                w.extend(std::iter::repeat_n(g as u8, e as usize));
            }
            out.push(Monomial(w));
        }
        return;
    }
    if col == n - 1 {
        // the last entry of a row is forced
        if rowrem > colrem[col] {
            return;
        }
        table[row * n + col] = rowrem;
        colrem[col] -= rowrem;
        let next = if row + 1 < n { b.rowdeg[row + 1] } else { 0 };
        fill(row + 1, 0, n, b, table, colrem, next, out);
        colrem[col] += rowrem;
        table[row * n + col] = 0;
        return;
    }
    for e in 0..=rowrem.min(colrem[col]) {
        table[row * n + col] = e;
        colrem[col] -= e;
        fill(row, col + 1, n, b, table, colrem, rowrem - e, out);
        colrem[col] += e;
    }
    table[row * n + col] = 0;
}

struct Row<K: Scalar> {
    /// Pivot coefficient normalized to 1.
    vec: NcPoly<K>,
    combo: BTreeMap<usize, K>,
}

/// Row echelon form of the span of a family of polynomials, remembering how
/// each row is combined from the family. Pivots are leading monomials.
pub struct Echelon<K: Scalar> {
    rows: BTreeMap<Monomial, Row<K>>,
    len: usize,
}

impl<K: Scalar> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            len: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates pivots from `v`, recording the subtracted multiples in `combo`.
    fn reduce(&self, mut v: NcPoly<K>, combo: &mut BTreeMap<usize, K>, sign: &K) -> NcPoly<K> {
        let mut bound: Option<Monomial> = None;
        loop {
            let next = v
                .terms()
                .iter()
                .rev()
                .filter(|(m, _)| bound.as_ref().is_none_or(|b| *m < b))
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let row = &self.rows[&m];
            v.add_scaled(&row.vec, &c.negate());
            for (i, d) in &row.combo {
                crate::qalgebra::add_into(combo, *i, d.times(&c).times(sign));
            }
            bound = Some(m);
        }
        v
    }

    /// Adds the next family member; its index is the number of prior pushes.
    pub fn push(&mut self, v: NcPoly<K>) {
        let idx = self.len;
        self.len += 1;
        let mut combo = BTreeMap::new();
        combo.insert(idx, K::one());
        let v = self.reduce(v, &mut combo, &K::one().negate());
        let Some((m, c)) = v.leading_term().map(|(m, c)| (m.clone(), c.clone())) else {
            return;
        };
        let inv = c.inverse().expect("nonzero pivot");
        let vec = v.scale(&inv);
        let combo = combo
            .into_iter()
            .map(|(i, d)| (i, d.times(&inv)))
            .collect();
        self.rows.insert(m, Row { vec, combo });
    }

    /// Coefficients `x` with `Σ x_i v_i = target`, if `target` is in the span.
    pub fn solve(&self, target: &NcPoly<K>) -> Option<BTreeMap<usize, K>> {
        let mut combo = BTreeMap::new();
        let rest = self.reduce(target.clone(), &mut combo, &K::one());
        rest.is_zero().then_some(combo)
    }
}

impl<K: Scalar> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}
