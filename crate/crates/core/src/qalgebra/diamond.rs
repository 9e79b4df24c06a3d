use rayon::prelude::*;

use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

use super::algebra::{QMatrixAlgebra, Strategy};
use super::poly::{Gen, Monomial};

impl<K: Scalar> QMatrixAlgebra<K> {
    /// Resolves every overlap `x y z` both ways and compares normal forms.
    ///
    /// Path A rewrites the left pair first and continues leftmost; path B
    /// rewrites the right pair first and continues rightmost. Both are also
    /// compared against the memoized insertion product.
    pub fn diamond_check(&self) -> SuiteReport {
        self.diamond_over(&self.all_gens(), false, "diamond")
    }

    /// The same check on the lower generators, deleting upper-containing
    /// words after every step.
    pub fn diamond_check_borel(&self) -> SuiteReport {
        self.diamond_over(&self.lower_gens(), true, "diamond-borel")
    }

    fn diamond_over(&self, gens: &[Gen], borel: bool, suite: &str) -> SuiteReport {
        let triples: Vec<[Gen; 3]> = gens
            .iter()
            .flat_map(|&x| gens.iter().flat_map(move |&y| gens.iter().map(move |&z| [x, y, z])))
            .collect();
        let keep_all = |_: &[Gen]| true;
        let keep_lower = |w: &[Gen]| self.is_lower_word(w);
        let keep: &(dyn Fn(&[Gen]) -> bool + Sync) = if borel { &keep_lower } else { &keep_all };
        let cases = triples
            .par_iter()
            .map(|w| {
                let name = Monomial(w.to_vec()).render(self.n());
                let first = |pos: usize| {
                    if w[pos] > w[pos + 1] {
                        self.rewrite_at(w, pos)
                    } else {
                        vec![(w.to_vec(), K::one())]
                    }
                };
                let a = self.reduce_raw(first(0), Strategy::Leftmost, keep);
                let b = self.reduce_raw(first(1), Strategy::Rightmost, keep);
                let fast = self.normal_form(&vec![(w.to_vec(), K::one())]);
                let fast = if borel { self.borel_project(&fast).into_inner() } else { fast };
                if a != b {
                    CaseResult::fail(name, a.to_string(), b.to_string(), a.sub(&b).to_string())
                } else if a != fast {
                    CaseResult::fail(name, a.to_string(), fast.to_string(), a.sub(&fast).to_string())
                } else {
                    CaseResult::pass(name, a.to_string(), b.to_string())
                }
            })
            .collect();
        SuiteReport::with_cases(suite, cases)
    }
}
