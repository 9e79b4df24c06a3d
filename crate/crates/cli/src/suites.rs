//! Named verification suites over one configuration.

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use qflag_core::gaussbundle::{cocycle_check, flag_index, flag_ore_set, ChartCache, CellChart, Comodule, Permutation};
use qflag_core::orelocal::{OreEngine, OreFraction, OreSet};
use qflag_core::qalgebra::QMatrixAlgebra;
use qflag_core::report::{CaseResult, SuiteReport};
use qflag_core::scalar::{Scalar, ScalarQ};

use crate::config::{Config, ConfigError, QMode};
use crate::fuzz::roundtrip_suite;

pub const SUITE_NAMES: &[&str] = &[
    "diamond", "laplace", "antipode", "quasidet", "ore", "thm9", "thm10", "thm11", "prop1", "cocycle", "compat",
    "nested", "roundtrip",
];

/// Expressions per `roundtrip` run.
pub const ROUNDTRIP_COUNT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] qflag_core::Error),
}

/// Runs `cfg.suites` in order. Per-case times are zeroed unless
/// `cfg.timings` is set.
pub fn run_suite(cfg: &Config) -> Result<Vec<SuiteReport>, RunError> {
    cfg.validate()?;
    let mut reports = match &cfg.q {
        QMode::Symbolic => run_with(cfg, ScalarQ::q())?,
        QMode::Rational(r) => run_with::<BigRational>(cfg, r.clone())?,
    };
    if !cfg.timings {
        for c in reports.iter_mut().flat_map(|r| r.cases.iter_mut()) {
            c.ms = 0;
        }
    }
    Ok(reports)
}

fn run_with<K: Scalar>(cfg: &Config, q: K) -> Result<Vec<SuiteReport>, RunError> {
    let alg = QMatrixAlgebra::new(cfg.n, q)?;
    let ctx = Context {
        cfg,
        alg: &alg,
        cache: ChartCache::new(&alg),
        sigmas: cfg.sigmas(),
    };
    let mut out = Vec::new();
    for name in &cfg.suites {
        out.extend(ctx.run(name));
    }
    Ok(out)
}

struct Context<'c, 'a, K: Scalar> {
    cfg: &'c Config,
    alg: &'a QMatrixAlgebra<K>,
    cache: ChartCache<'a, K>,
    sigmas: Vec<Permutation>,
}

/// Prefixes case names with the chart unless they already carry it.
fn tag(mut r: SuiteReport, prefix: &str) -> SuiteReport {
    for c in &mut r.cases {
        if !c.name.starts_with(prefix) {
            c.name = format!("{prefix} {}", c.name);
        }
    }
    r
}

impl<K: Scalar> Context<'_, '_, K> {
    fn run(&self, name: &str) -> Vec<SuiteReport> {
        let alg = self.alg;
        let n = alg.n();
        match name {
            "diamond" => vec![alg.diamond_check(), alg.diamond_check_borel()],
            "laplace" => {
                let sizes: Vec<usize> = if n == 1 { vec![1] } else { (1..n).collect() };
                vec![alg.laplace_suite(&sizes)]
            }
            "antipode" => vec![alg.antipode_axiom_check()],
            "quasidet" => vec![alg.quasidet_identity_check(), alg.quasidet_inverse_antipode_check()],
            "ore" => vec![self.per_chart("ore", |s, _| {
                let set = flag_ore_set(alg, s)?;
                Ok(OreEngine::new(alg, set, self.cfg.ore_bound)?.ore_condition_suite())
            })],
            "compat" => vec![self.per_chart("compat", |_, c| Ok(c.compat_report().clone()))],
            "thm9" => vec![self.per_chart("thm9", |s, c| {
                let mut r = c.compat_report().clone();
                r.extend(c.gauss_verify());
                if n == 3 {
                    for blocks in [[1], [2]] {
                        let p = self.cache.get(s, Some(&blocks))?;
                        r.extend(tag(p.gauss_verify(), &format!("blocks={}", blocks[0])));
                    }
                }
                Ok(r)
            })],
            "thm10" => vec![self.per_chart("thm10", |_, c| Ok(c.gamma_hom_check()))],
            "thm11" => vec![self.per_chart("thm11", |_, c| {
                let mut r = c.u_coinvariance_check();
                r.extend(c.u_stability_check(self.cfg.max_degree, n >= 3));
                Ok(r)
            })],
            "prop1" => vec![self.per_chart("prop1", |_, c| {
                let mut samples = vec![("1".to_string(), OreFraction::poly(alg.one()))];
                for ((i, j), u) in c.u_entries() {
                    samples.push((format!("u[{i},{j}]"), u.clone()));
                }
                if let Some(((i, j), u)) = c.u_entries().first() {
                    samples.push((format!("u[{i},{j}]^2"), c.engine().fraction_multiply(u, u)?));
                }
                let mut r = c.prop1_check(Comodule::Fundamental, &samples);
                r.extend(c.prop1_check(Comodule::Trivial, &samples));
                Ok(r)
            })],
            "cocycle" => vec![self.cocycle()],
            "nested" => vec![self.nested()],
            "roundtrip" => vec![roundtrip_suite(self.cfg.seed, ROUNDTRIP_COUNT, n)],
            other => unreachable!("suite `{other}` passed validation"),
        }
    }

    /// One report over every configured chart, in configuration order.
    fn per_chart(
        &self,
        suite: &str,
        f: impl Fn(&Permutation, &CellChart<'_, K>) -> qflag_core::Result<SuiteReport> + Sync,
    ) -> SuiteReport {
        let parts: Vec<SuiteReport> = self
            .sigmas
            .par_iter()
            .map(|s| {
                let prefix = format!("sigma={s}");
                let r = self.cache.get(s, None).and_then(|c| f(s, &c));
                match r {
                    Ok(r) => tag(r, &prefix),
                    Err(e) => SuiteReport::with_cases(
                        suite,
                        vec![CaseResult::fail(format!("{prefix} chart"), "", "", e.to_string())],
                    ),
                }
            })
            .collect();
        let mut out = SuiteReport::new(suite);
        for p in parts {
            out.extend(p);
        }
        out
    }

    fn cocycle(&self) -> SuiteReport {
        let charts: qflag_core::Result<Vec<_>> = self.sigmas.iter().map(|s| self.cache.get(s, None)).collect();
        match charts {
            Ok(charts) => {
                let refs: Vec<&CellChart<'_, K>> = charts.iter().map(|c| c.as_ref()).collect();
                let mut r = cocycle_check(&refs, Comodule::Fundamental);
                r.extend(tag(cocycle_check(&refs, Comodule::Trivial), "trivial"));
                r.suite = "cocycle".into();
                r
            }
            Err(e) => SuiteReport::with_cases("cocycle", vec![CaseResult::fail("charts", "", "", e.to_string())]),
        }
    }

    /// `{D} ⊂ S_id` and `{t[n,n]} ⊂ S_id`, sampled on coinvariant and
    /// non-coinvariant fractions.
    fn nested(&self) -> SuiteReport {
        let alg = self.alg;
        let n = alg.n();
        let mut report = SuiteReport::new("nested");
        let run = || -> qflag_core::Result<Vec<SuiteReport>> {
            let big = self.cache.get(&Permutation::identity(n), None)?;
            let d = alg.qdet();
            let small_d = OreEngine::new(alg, OreSet::with_labels("D", vec![d.clone()], vec!["D".into()])?, self.cfg.ore_bound)?;
            let samples_d = vec![
                OreFraction::poly(alg.one()),
                OreFraction::new(vec![0], d),
                OreFraction::new(vec![0], alg.gen(1, 1)),
            ];
            let last = format!("t[{n},{n}]");
            let small_t = OreEngine::new(alg, OreSet::with_labels(last.clone(), vec![alg.gen(n, n)], vec![last])?, self.cfg.ore_bound)?;
            let mut samples_t: Vec<OreFraction<K>> = (1..n).map(|i| OreFraction::new(vec![0], alg.gen(i, n))).collect();
            samples_t.push(OreFraction::new(vec![0], alg.gen(1, 1)));
            Ok(vec![
                small_d.nested_check(big.borel(), big.engine(), &[vec![flag_index(n, 1)]], &samples_d),
                small_t.nested_check(big.borel(), big.engine(), &[vec![flag_index(n, n)]], &samples_t),
            ])
        };
        match run() {
            Ok(parts) => {
                for p in parts {
                    report.extend(p);
                }
            }
            Err(e) => report.push(CaseResult::fail("setup", "", "", e.to_string())),
        }
        report
    }
}
