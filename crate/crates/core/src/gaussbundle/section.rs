//! The section `γ_σ : B → S_σ⁻¹G`, `b^i_j ↦ a^i_j`, the coinvariance of the
//! `u`-coordinates and the induced action `b ▷ x = Σ γ(b₍₁₎) x γ(S b₍₂₎)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::orelocal::{Echelon, LocBorel, LocMono, OreFraction};
use crate::qalgebra::{BorelPoly, NcPoly};
use crate::report::{CaseResult, SuiteReport};
use crate::scalar::Scalar;

use super::{flag_index, over_flag, position, CellChart};

impl<K: Scalar> CellChart<'_, K> {
    fn require_borel(&self) -> Result<()> {
        match self.blocks {
            None => Ok(()),
            Some(_) => Err(Error::Unsupported("the section needs the Borel chart".into())),
        }
    }

    /// `γ(b[i,j]) = a^i_j`.
    pub fn gamma_gen(&self, i: usize, j: usize) -> OreFraction<K> {
        self.a[i - 1][j - 1].clone()
    }

    /// `γ(b[k,k]⁻¹) = (a^k_k)⁻¹ = (−q)^{1−p} F_{k+1} F_k⁻¹`.
    pub fn gamma_diag_inverse(&self, k: usize) -> Result<OreFraction<K>> {
        let n = self.n();
        let alg = self.alg();
        let rows = self.sigma.image_sorted(k..=n);
        let p = position(&rows, self.sigma.at(k));
        let upper = if k == n {
            alg.one()
        } else {
            self.set().gens()[flag_index(n, k + 1)].clone()
        };
        over_flag(self.engine(), upper.scale(&alg.neg_q_pow(1 - p)), k)
    }

    /// `γ` of a Borel polynomial, multiplied out word by word.
    pub fn gamma(&self, b: &BorelPoly<K>) -> Result<OreFraction<K>> {
        self.require_borel()?;
        let e = self.engine();
        let mut terms = Vec::new();
        for (m, c) in b.inner().terms() {
            let mut acc = OreFraction::poly(self.alg().constant(c.clone()));
            for &g in m.gens() {
                let gi = self.alg().unpack(g);
                acc = e.fraction_multiply(&acc, &self.gamma_gen(gi.row, gi.col))?;
            }
            terms.push(acc);
        }
        e.fraction_sum(terms)
    }

    /// `γ` on the Borel algebra with inverted diagonal.
    pub fn gamma_loc(&self, b: &LocBorel<K>) -> Result<OreFraction<K>> {
        self.require_borel()?;
        let e = self.engine();
        let mut terms = Vec::new();
        for (m, c) in b.terms() {
            let mut acc = OreFraction::poly(self.alg().constant(c.clone()));
            for (k, &ek) in m.diag.iter().enumerate() {
                let f = if ek >= 0 {
                    self.gamma_gen(k + 1, k + 1)
                } else {
                    self.gamma_diag_inverse(k + 1)?
                };
                for _ in 0..ek.unsigned_abs() {
                    acc = e.fraction_multiply(&acc, &f)?;
                }
            }
            for &g in m.word.gens() {
                let gi = self.alg().unpack(g);
                acc = e.fraction_multiply(&acc, &self.gamma_gen(gi.row, gi.col))?;
            }
            terms.push(acc);
        }
        e.fraction_sum(terms)
    }

    /// Every quadratic Borel relation `h g = π(h g)` for descents `h > g` of
    /// lower generators holds among the `a`-entries; `γ(b[k,k]) γ(b[k,k]⁻¹) = 1`;
    /// and `ρ(γ(b[i,j])) = Σ_k γ(b[i,k]) ⊗ b[k,j]`.
    pub fn gamma_hom_check(&self) -> SuiteReport {
        use rayon::prelude::*;
        let mut report = SuiteReport::new("thm10");
        if let Err(e) = self.require_borel() {
            report.push(CaseResult::fail("section", "", "", e.to_string()));
            return report;
        }
        let alg = self.alg();
        let n = self.n();
        let e = self.engine();
        let lower = alg.lower_gens();
        let pairs: Vec<(u8, u8)> = lower
            .iter()
            .flat_map(|&h| lower.iter().filter(move |&&g| g < h).map(move |&g| (h, g)))
            .collect();
        let rel: Vec<CaseResult> = pairs
            .par_iter()
            .map(|&(h, g)| {
                CaseResult::timed(|| {
                    let (hi, gi) = (alg.unpack(h), alg.unpack(g));
                    let name = format!("sigma={} gamma({} {})", self.sigma, hi, gi).replace("t[", "b[");
                    let run = || -> Result<(bool, String, String)> {
                        let lhs = e.fraction_multiply(
                            &self.gamma_gen(hi.row, hi.col),
                            &self.gamma_gen(gi.row, gi.col),
                        )?;
                        let nf = alg.borel_project(&alg.mul(&alg.gen(hi.row, hi.col), &alg.gen(gi.row, gi.col)));
                        let rhs = self.gamma(&nf)?;
                        let diff = e.fraction_sub(&lhs, &rhs)?;
                        Ok((diff.is_zero(), nf.to_string(), diff.render(self.set())))
                    };
                    match run() {
                        Ok((ok, nf, diff)) => CaseResult::check(name, ok, "gamma(h)gamma(g)", format!("gamma({nf})"), diff),
                        Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
                    }
                })
            })
            .collect();
        report.extend(SuiteReport::with_cases("thm10", rel));
        for k in 1..=n {
            let name = format!("sigma={} gamma(b[{k},{k}]) gamma(b[{k},{k}]^-1) = 1", self.sigma);
            let run = || -> Result<OreFraction<K>> {
                let x = e.fraction_multiply(&self.gamma_gen(k, k), &self.gamma_diag_inverse(k)?)?;
                e.fraction_sub(&x, &OreFraction::poly(alg.one()))
            };
            report.push(match run() {
                Ok(d) => CaseResult::check(name, d.is_zero(), "", "1", d.render(self.set())),
                Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
            });
        }
        for i in 1..=n {
            for j in 1..=i {
                report.push(self.comodule_map_case(i, j));
            }
        }
        report
    }

    fn comodule_map_case(&self, i: usize, j: usize) -> CaseResult {
        let name = format!("sigma={} rho(gamma(b[{i},{j}])) = (gamma x id) Delta(b[{i},{j}])", self.sigma);
        let e = self.engine();
        let bl = self.borel();
        let n = self.n();
        let run = || -> Result<(bool, String)> {
            let x = self.gamma_gen(i, j);
            let lhs = e.coact_fraction(bl, self.compatibility(), &x)?;
            let groups = lhs.by_right_leg(n);
            let mut legs: BTreeSet<LocMono> = groups.keys().cloned().collect();
            let rhs_terms: Vec<(LocMono, K, OreFraction<K>)> = (j..=i)
                .flat_map(|k| {
                    bl.gen(k, j)
                        .terms()
                        .iter()
                        .map(|(m, c)| (m.clone(), c.clone(), self.gamma_gen(i, k)))
                        .collect::<Vec<_>>()
                })
                .collect();
            legs.extend(rhs_terms.iter().map(|(m, _, _)| m.clone()));
            let mut bad = Vec::new();
            for leg in legs {
                let l = OreFraction::new(
                    lhs.denom.clone(),
                    groups.get(&leg).cloned().unwrap_or_else(|| NcPoly::zero(n)),
                );
                let r = e.fraction_sum(
                    rhs_terms
                        .iter()
                        .filter(|(m, _, _)| *m == leg)
                        .map(|(_, c, f)| f.scale(c)),
                )?;
                let d = e.fraction_sub(&l, &r)?;
                if !d.is_zero() {
                    bad.push(format!("leg {}: {}", leg.render(n), d.render(self.set())));
                }
            }
            Ok((bad.is_empty(), bad.join("; ")))
        };
        match run() {
            Ok((ok, w)) => CaseResult::check(name, ok, "", "", w),
            Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
        }
    }

    /// Each strictly upper `u^i_j` is a localized coinvariant.
    pub fn u_coinvariance_check(&self) -> SuiteReport {
        let mut report = SuiteReport::new("thm11-i");
        let e = self.engine();
        for ((i, j), u) in self.u_entries() {
            let name = format!("sigma={} u[{i},{j}] coinvariant", self.sigma);
            report.push(
                match e.coinvariant_residual(self.borel(), self.compatibility(), u) {
                    Ok(r) => CaseResult::check(name, r.is_zero(), u.render(self.set()), "rho(u) = u (x) 1", r.to_string()),
                    Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
                },
            );
        }
        report
    }

    /// `b ▷ x = Σ γ(b₍₁₎) x γ(S b₍₂₎)`.
    pub fn triangle_action(&self, b: &BorelPoly<K>, x: &OreFraction<K>) -> Result<OreFraction<K>> {
        let e = self.engine();
        let bl = self.borel();
        let mut terms = Vec::new();
        for (l, r) in bl.coproduct(b) {
            let left = e.fraction_multiply(&self.gamma_loc(&l)?, x)?;
            terms.push(e.fraction_multiply(&left, &self.gamma_loc(&bl.antipode(&r))?)?);
        }
        e.fraction_sum(terms)
    }

    /// Products of `u`-generators of length `1..=bound`, plus the unit.
    fn u_words(&self, bound: usize) -> Result<Vec<(String, OreFraction<K>)>> {
        let e = self.engine();
        let us: Vec<((usize, usize), OreFraction<K>)> =
            self.u_entries().into_iter().map(|(ij, u)| (ij, u.clone())).collect();
        let mut out = vec![("1".to_string(), OreFraction::poly(self.alg().one()))];
        let mut frontier = out.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for (name, w) in &frontier {
                for ((i, j), u) in &us {
                    let label = if name == "1" {
                        format!("u[{i},{j}]")
                    } else {
                        format!("{name}*u[{i},{j}]")
                    };
                    next.push((label, e.fraction_multiply(w, u)?));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// `c` with `v = c u`, if any.
    fn scalar_ratio(&self, v: &OreFraction<K>, u: &OreFraction<K>) -> Result<Option<K>> {
        if v.is_zero() {
            return Ok(Some(K::zero()));
        }
        let (_, nums) = self.engine().common_denominator(&[v.clone(), u.clone()])?;
        Ok(nums[0].ratio_to(&nums[1]))
    }

    /// Decides `v ∈ span(words)` over a common denominator.
    fn span_membership(&self, v: &OreFraction<K>, words: &[(String, OreFraction<K>)]) -> Result<Option<String>> {
        let mut all = vec![v.clone()];
        all.extend(words.iter().map(|(_, w)| w.clone()));
        let (_, nums) = self.engine().common_denominator(&all)?;
        let mut ech = Echelon::new();
        for p in &nums[1..] {
            ech.push(p.clone());
        }
        Ok(ech.solve(&nums[0]).map(|sol| {
            sol.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("({c})*{}", words[i].0))
                .collect::<Vec<_>>()
                .join(" + ")
        }))
    }

    /// `b ▷ u` for each Borel generator `b` (only the diagonal ones when
    /// `diagonal_only`) and each `u`-generator, expressed in the algebra
    /// generated by the `u`'s: first as a scalar multiple of `u`, otherwise
    /// as a combination of `u`-words of length `≤ bound`. Charts other than
    /// `σ = id` and the order reversal report their findings as inconclusive.
    pub fn u_stability_check(&self, bound: usize, diagonal_only: bool) -> SuiteReport {
        let mut report = SuiteReport::new("thm11-ii");
        let covered = self.sigma.is_identity() || self.sigma.is_reversal();
        let alg = self.alg();
        let n = self.n();
        let mut words: Option<Vec<(String, OreFraction<K>)>> = None;
        for bi in 1..=n {
            for bj in 1..=bi {
                if diagonal_only && bi != bj {
                    continue;
                }
                let b = BorelPoly(alg.gen(bi, bj));
                for ((i, j), u) in self.u_entries() {
                    let name = format!("sigma={} b[{bi},{bj}] > u[{i},{j}]", self.sigma);
                    let mut run = || -> Result<(Option<String>, String)> {
                        let v = self.triangle_action(&b, u)?;
                        let shown = v.render(self.set());
                        if let Some(c) = self.scalar_ratio(&v, u)? {
                            return Ok((Some(format!("({c})*u[{i},{j}]")), shown));
                        }
                        if words.is_none() {
                            words = Some(self.u_words(bound)?);
                        }
                        Ok((self.span_membership(&v, words.as_ref().unwrap())?, shown))
                    };
                    let case = match run() {
                        Ok((Some(comb), shown)) if covered => CaseResult::pass(name, shown, comb),
                        Ok((Some(comb), shown)) => CaseResult::inconclusive(
                            name,
                            shown,
                            comb.clone(),
                            format!("outside the covered charts; found {comb}"),
                        ),
                        Ok((None, shown)) => CaseResult::inconclusive(
                            name,
                            shown,
                            "",
                            format!("not in the span of u-words of length <= {bound}"),
                        ),
                        Err(err) => CaseResult::inconclusive(name, "", "", err.to_string()),
                    };
                    report.push(case);
                }
            }
        }
        report
    }

    /// `b ▷ 1 = ε(b)` and `b ▷ (xy) = Σ (b₍₁₎ ▷ x)(b₍₂₎ ▷ y)` for a Borel
    /// generator `b`.
    pub fn measuring_check(&self, b: (usize, usize), x: &OreFraction<K>, y: &OreFraction<K>) -> Result<(bool, bool)> {
        let alg = self.alg();
        let e = self.engine();
        let bp = BorelPoly(alg.gen(b.0, b.1));
        let one = OreFraction::poly(alg.one());
        let unit = e.fraction_equal(
            &self.triangle_action(&bp, &one)?,
            &OreFraction::poly(alg.constant(alg.counit(bp.inner()))),
        )?;
        let lhs = self.triangle_action(&bp, &e.fraction_multiply(x, y)?)?;
        let mut terms = Vec::new();
        for k in b.1..=b.0 {
            let l = self.triangle_action(&BorelPoly(alg.gen(b.0, k)), x)?;
            let r = self.triangle_action(&BorelPoly(alg.gen(k, b.1)), y)?;
            terms.push(e.fraction_multiply(&l, &r)?);
        }
        let rhs = e.fraction_sum(terms)?;
        Ok((unit, e.fraction_equal(&lhs, &rhs)?))
    }
}
