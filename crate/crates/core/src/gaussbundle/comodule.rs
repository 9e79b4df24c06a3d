//! Trivializations of associated bundles: the maps `κ`, `κ̄` of a chart and
//! the transition matrices between charts.
//!
//! A left `B`-comodule with basis `m_1..m_d` is given by its matrix
//! coefficients, `ρ(m_β) = Σ_α m^α_β ⊗ m_α`. For the fundamental comodule the
//! upper index of `m^α_β` is the column index: `m^α_β = b[β,α]`.

use std::fmt;

use crate::error::Result;
use crate::orelocal::{LocBorel, OreEngine, OreFraction, OreSet};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

use super::{BorelLoc, CellChart, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comodule {
    /// `ρ(m_β) = Σ_α b[β,α] ⊗ m_α`
    Fundamental,
    /// `ρ(m) = 1 ⊗ m`
    Trivial,
}

impl Comodule {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Comodule::Fundamental => n,
            Comodule::Trivial => 1,
        }
    }

    /// `m^α_β` (1-based) in the localized Borel.
    pub fn coefficient<K: Scalar>(self, bl: &BorelLoc<'_, K>, alpha: usize, beta: usize) -> LocBorel<K> {
        let n = bl.alg().n();
        match self {
            Comodule::Fundamental => bl.gen(beta, alpha),
            Comodule::Trivial => LocBorel::one(n),
        }
    }

    /// `S(m^α_β)`.
    pub fn antipode_coefficient<K: Scalar>(self, bl: &BorelLoc<'_, K>, alpha: usize, beta: usize) -> LocBorel<K> {
        let n = bl.alg().n();
        match self {
            Comodule::Fundamental => bl.antipode_gen(beta, alpha),
            Comodule::Trivial => LocBorel::one(n),
        }
    }
}

impl<K: Scalar> CellChart<'_, K> {
    /// `κ(f ⊗ m_β) = Σ_α f γ(m^α_β) ⊗ m_α`, as the vector of coefficients.
    pub fn kappa(&self, m: Comodule, f: &OreFraction<K>, beta: usize) -> Result<Vec<OreFraction<K>>> {
        let bl = self.borel();
        (1..=m.dim(self.n()))
            .map(|alpha| {
                self.engine()
                    .fraction_multiply(f, &self.gamma_loc(&m.coefficient(bl, alpha, beta))?)
            })
            .collect()
    }

    /// `κ̄(Σ_α g_α ⊗ m_α) = Σ_{α,δ} g_α γ(S m^δ_α) ⊗ m_δ`.
    pub fn kappa_bar(&self, m: Comodule, g: &[OreFraction<K>]) -> Result<Vec<OreFraction<K>>> {
        let bl = self.borel();
        let e = self.engine();
        let d = m.dim(self.n());
        let mut out = Vec::with_capacity(d);
        for delta in 1..=d {
            let mut terms = Vec::new();
            for (alpha, ga) in (1..=d).zip(g) {
                let s = self.gamma_loc(&m.antipode_coefficient(bl, delta, alpha))?;
                terms.push(e.fraction_multiply(ga, &s)?);
            }
            out.push(e.fraction_sum(terms)?);
        }
        Ok(out)
    }

    /// `κ̄ ∘ κ = id` on `f ⊗ m_β` for every sample `f` and basis vector.
    pub fn prop1_check(&self, m: Comodule, samples: &[(String, OreFraction<K>)]) -> SuiteReport {
        let mut report = SuiteReport::new("prop1");
        let e = self.engine();
        for (label, f) in samples {
            for beta in 1..=m.dim(self.n()) {
                let name = format!("sigma={} kbar(k({label} (x) m{beta}))", self.sigma);
                let run = || -> Result<Vec<String>> {
                    let back = self.kappa_bar(m, &self.kappa(m, f, beta)?)?;
                    let mut bad = Vec::new();
                    for (delta, x) in back.iter().enumerate() {
                        let want = if delta + 1 == beta {
                            f.clone()
                        } else {
                            OreFraction::poly(self.alg().zero())
                        };
                        let d = e.fraction_sub(x, &want)?;
                        if !d.is_zero() {
                            bad.push(format!("m{}: {}", delta + 1, d.render(self.set())));
                        }
                    }
                    Ok(bad)
                };
                report.push(match run() {
                    Ok(bad) => CaseResult::check(name, bad.is_empty(), "", format!("{label} (x) m{beta}"), bad.join("; ")),
                    Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
                });
            }
        }
        report
    }
}

/// `(𝔐_{λ',λ})^γ_α = Σ_β γ_{λ'}(m^β_α) γ_λ(S m^γ_β)` over `S_λ ∨ S_{λ'}`,
/// stored as `entries[α][γ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix<K: Scalar> {
    pub from: Permutation,
    pub to: Permutation,
    pub set: OreSet<K>,
    pub entries: Vec<Vec<OreFraction<K>>>,
}

impl<K: Scalar> fmt::Display for TransitionMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M[{} <- {}] over {}", self.to, self.from, self.set.name)?;
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|x| x.render(&self.set)).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Union of the Ore sets of several charts, with each chart's index map.
fn union_of<K: Scalar>(charts: &[&CellChart<'_, K>]) -> (OreSet<K>, Vec<Vec<usize>>) {
    let mut set = charts[0].set().clone();
    let mut maps = vec![(0..set.len()).collect::<Vec<_>>()];
    for c in &charts[1..] {
        let (u, m) = set.union(c.set());
        set = u;
        maps.push(m);
    }
    (set, maps)
}

fn transition_in<K: Scalar>(
    e: &OreEngine<'_, K>,
    m: Comodule,
    to: (&CellChart<'_, K>, &[usize]),
    from: (&CellChart<'_, K>, &[usize]),
) -> Result<Vec<Vec<OreFraction<K>>>> {
    let n = e.alg().n();
    let d = m.dim(n);
    let bl = to.0.borel();
    let mut rows = Vec::with_capacity(d);
    for alpha in 1..=d {
        let mut row = Vec::with_capacity(d);
        for gamma in 1..=d {
            let mut terms = Vec::new();
            for beta in 1..=d {
                let l = to.0.gamma_loc(&m.coefficient(bl, beta, alpha))?.reindex(to.1);
                let r = from
                    .0
                    .gamma_loc(&m.antipode_coefficient(bl, gamma, beta))?
                    .reindex(from.1);
                terms.push(e.fraction_multiply(&l, &r)?);
            }
            row.push(e.fraction_sum(terms)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `𝔐_{λ',λ}` with `λ = from`, `λ' = to`.
pub fn transition_matrix<K: Scalar>(
    from: &CellChart<'_, K>,
    to: &CellChart<'_, K>,
    m: Comodule,
) -> Result<TransitionMatrix<K>> {
    let (set, maps) = union_of(&[to, from]);
    let e = OreEngine::new(to.alg(), set.clone(), to.engine().bound())?;
    let entries = transition_in(&e, m, (to, &maps[0]), (from, &maps[1]))?;
    Ok(TransitionMatrix {
        from: from.sigma.clone(),
        to: to.sigma.clone(),
        set,
        entries,
    })
}

fn matrix_product<K: Scalar>(
    e: &OreEngine<'_, K>,
    x: &[Vec<OreFraction<K>>],
    y: &[Vec<OreFraction<K>>],
) -> Result<Vec<Vec<OreFraction<K>>>> {
    let d = x.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| e.fraction_sum((0..d).map(|k| e.fraction_multiply(&x[i][k], &y[k][j])).collect::<Result<Vec<_>>>()?))
                .collect()
        })
        .collect()
}

fn identity_cases<K: Scalar>(
    e: &OreEngine<'_, K>,
    name: &str,
    x: &[Vec<OreFraction<K>>],
    report: &mut SuiteReport,
) -> Result<()> {
    let alg = e.alg();
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let want = OreFraction::poly(if i == j { alg.one() } else { alg.zero() });
            let d = e.fraction_sub(v, &want)?;
            report.push(CaseResult::check(
                format!("{name} [{},{}]", i + 1, j + 1),
                d.is_zero(),
                v.render(e.set()),
                want.render(e.set()),
                d.render(e.set()),
            ));
        }
    }
    Ok(())
}

/// `𝔐_{λ,λ} = I` for each chart, `𝔐_{λ,μ} 𝔐_{μ,λ} = I` for each pair, and
/// `𝔐_{λ,μ} 𝔐_{μ,ν} = 𝔐_{λ,ν}` for each triple of distinct charts, each
/// law evaluated over the union of the Ore sets involved.
pub fn cocycle_check<K: Scalar>(charts: &[&CellChart<'_, K>], m: Comodule) -> SuiteReport {
    let mut report = SuiteReport::new("cocycle");
    let run = |report: &mut SuiteReport| -> Result<()> {
        for c in charts {
            let e = c.engine();
            let ident: Vec<usize> = (0..c.set().len()).collect();
            let x = transition_in(e, m, (c, &ident), (c, &ident))?;
            identity_cases(e, &format!("M[{0},{0}] = I", c.sigma), &x, report)?;
        }
        for (i, l) in charts.iter().enumerate() {
            for mu in &charts[i + 1..] {
                let (set, maps) = union_of(&[l, mu]);
                let e = OreEngine::new(l.alg(), set, l.engine().bound())?;
                let lm = transition_in(&e, m, (l, &maps[0]), (mu, &maps[1]))?;
                let ml = transition_in(&e, m, (mu, &maps[1]), (l, &maps[0]))?;
                let p = matrix_product(&e, &lm, &ml)?;
                identity_cases(&e, &format!("M[{0},{1}] M[{1},{0}] = I", l.sigma, mu.sigma), &p, report)?;
            }
        }
        for (i, l) in charts.iter().enumerate() {
            for (j, mu) in charts.iter().enumerate() {
                for (k, nu) in charts.iter().enumerate() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let (set, maps) = union_of(&[l, mu, nu]);
                    let e = OreEngine::new(l.alg(), set, l.engine().bound())?;
                    let lm = transition_in(&e, m, (l, &maps[0]), (mu, &maps[1]))?;
                    let mn = transition_in(&e, m, (mu, &maps[1]), (nu, &maps[2]))?;
                    let ln = transition_in(&e, m, (l, &maps[0]), (nu, &maps[2]))?;
                    let p = matrix_product(&e, &lm, &mn)?;
                    for (a, row) in p.iter().enumerate() {
                        for (b, v) in row.iter().enumerate() {
                            let d = e.fraction_sub(v, &ln[a][b])?;
                            report.push(CaseResult::check(
                                format!("M[{},{}] M[{},{}] = M[{},{}] [{},{}]", l.sigma, mu.sigma, mu.sigma, nu.sigma, l.sigma, nu.sigma, a + 1, b + 1),
                                d.is_zero(),
                                v.render(e.set()),
                                ln[a][b].render(e.set()),
                                d.render(e.set()),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    };
    if let Err(err) = run(&mut report) {
        report.push(CaseResult::inconclusive("cocycle", "", "", err.to_string()));
    }
    report
}
