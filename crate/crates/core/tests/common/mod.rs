//! Independent oracle: naive word rewriting from the FRT relations, with
//! coefficients specialized to a rational `q`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qflag_core::qalgebra::{NcPoly, QMatrixAlgebra};
use qflag_core::scalar::ScalarQ;

pub type Word = Vec<(usize, usize)>;
pub type Poly = BTreeMap<Word, BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub struct Oracle {
    pub q: BigRational,
}

impl Oracle {
    pub fn new(q: BigRational) -> Self {
        Oracle { q }
    }

    pub fn gen(&self, i: usize, j: usize) -> Poly {
        Poly::from([(vec![(i, j)], BigRational::one())])
    }

    pub fn one(&self) -> Poly {
        Poly::from([(Vec::new(), BigRational::one())])
    }

    /// Rewrites until every word is nondecreasing in `(row, col)` order.
    pub fn normalize(&self, p: &Poly) -> Poly {
        let qi = self.q.recip();
        let qd = &self.q - &qi;
        let mut todo: Vec<(Word, BigRational)> = p.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Poly::new();
        while let Some((w, c)) = todo.pop() {
            if c.is_zero() {
                continue;
            }
            let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
                add(&mut out, w, c);
                continue;
            };
            let ((a, c1), (b, d1)) = (w[k], w[k + 1]);
            let swapped = |x: (usize, usize), y: (usize, usize)| {
                let mut v = w.clone();
                v[k] = x;
                v[k + 1] = y;
                v
            };
            if a == b || c1 == d1 {
                // t_ij t_il = q t_il t_ij, t_ij t_kj = q t_kj t_ij
                todo.push((swapped(w[k + 1], w[k]), &c * &qi));
            } else if c1 < d1 {
                // t_il t_kj = t_kj t_il
                todo.push((swapped(w[k + 1], w[k]), c));
            } else {
                // t_ij t_kl - t_kl t_ij = (q - q^-1) t_il t_kj
                todo.push((swapped(w[k + 1], w[k]), c.clone()));
                todo.push((swapped((b, c1), (a, d1)), -(&c * &qd)));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        let mut raw = Poly::new();
        for (u, a) in x {
            for (v, b) in y {
                let mut w = u.clone();
                w.extend(v);
                add(&mut raw, w, a * b);
            }
        }
        self.normalize(&raw)
    }

    pub fn mul_all(&self, xs: &[&Poly]) -> Poly {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// `Σ_τ (-q)^{ℓ(τ)} t_{1τ(1)} ⋯ t_{nτ(n)}`
    pub fn qdet(&self, n: usize) -> Poly {
        let mut out = Poly::new();
        for tau in perms(n) {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| tau[i] > tau[j]).count();
            let c = (-self.q.clone()).pow(inv as i32);
            add(&mut out, (0..n).map(|i| (i + 1, tau[i])).collect(), c);
        }
        self.normalize(&out)
    }
}

pub fn add(p: &mut Poly, w: Word, c: BigRational) {
    let e = p.entry(w).or_insert_with(BigRational::zero);
    *e += c;
}

pub fn sub(x: &Poly, y: &Poly) -> Poly {
    let mut out = x.clone();
    for (w, c) in y {
        add(&mut out, w.clone(), -c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn scale(x: &Poly, k: &BigRational) -> Poly {
    let mut out: Poly = x.iter().map(|(w, c)| (w.clone(), c * k)).collect();
    out.retain(|_, c| !c.is_zero());
    out
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for k in 0..=p.len() {
            let mut v: Vec<usize> = p.clone();
            v.insert(k, n);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// A library polynomial as an oracle polynomial, coefficients through `f`.
pub fn export<K: qflag_core::scalar::Scalar>(alg: &QMatrixAlgebra<K>, p: &NcPoly<K>, f: impl Fn(&K) -> BigRational) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p.terms() {
        let w = m.gens().iter().map(|&g| {
            let gi = alg.unpack(g);
            (gi.row, gi.col)
        });
        add(&mut out, w.collect(), f(c));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn export_q(alg: &QMatrixAlgebra<ScalarQ>, p: &NcPoly<ScalarQ>, q0: &BigRational) -> Poly {
    export(alg, p, |c| c.specialize(q0).expect("no pole"))
}

pub fn export_r(alg: &QMatrixAlgebra<BigRational>, p: &NcPoly<BigRational>) -> Poly {
    export(alg, p, |c| c.clone())
}

/// The specialization points used throughout.
pub fn points() -> Vec<BigRational> {
    vec![rat(2, 1), rat(3, 2), rat(-5, 7)]
}
