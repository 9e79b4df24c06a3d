//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_BLOCKED` are evaluated exactly as stated and are
//! expected to print FAIL; for those the test instead asserts the documented
//! diagnostic that explains the failure.

use std::time::{Duration, Instant};

use qflag_cli::fuzz::{fuzz_expressions, roundtrip};
use qflag_cli::{emit_report, run_suite, Config, Evaluator, Format, QMode, Value, SUITE_NAMES};
use qflag_core::gaussbundle::{cocycle_check, flag_ore_set, gauss_decompose, CellChart, Comodule, Permutation};
use qflag_core::orelocal::{OreEngine, OreFraction, Side};
use qflag_core::qalgebra::{BorelPoly, QMatrixAlgebra};
use qflag_core::report::{Status, SuiteReport};
use qflag_core::scalar::{Scalar, ScalarQ};

/// Criteria whose literal statement does not hold; see the diagnostics below.
const KNOWN_BLOCKED: &[u32] = &[4, 9];

const CONFLUENCE_LIMIT: Duration = Duration::from_secs(10);
const LAPLACE_LIMIT: Duration = Duration::from_secs(60);
const GAUSS_LIMIT: Duration = Duration::from_secs(180);
const DEFAULT_SUITE_LIMIT: Duration = Duration::from_secs(300);
const ORE_DENOMINATOR_LIMIT: usize = 3;
const FUZZ_COUNT: usize = 1000;
const FUZZ_SEED: u64 = 20240607;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn alg(n: usize) -> QMatrixAlgebra<ScalarQ> {
    QMatrixAlgebra::new(n, ScalarQ::q()).unwrap()
}

fn charts(a: &QMatrixAlgebra<ScalarQ>) -> Vec<CellChart<'_, ScalarQ>> {
    Permutation::all(a.n())
        .iter()
        .map(|s| gauss_decompose(a, s, None).unwrap())
        .collect()
}

fn summary(reports: &[&SuiteReport]) -> String {
    let count = |s| reports.iter().map(|r| r.count(s)).sum::<usize>();
    let mut out = format!(
        "{} pass, {} fail, {} inconclusive",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Inconclusive)
    );
    if let Some(c) = reports.iter().flat_map(|r| r.failures()).next() {
        out.push_str(&format!("; first failure: {}", c.name));
    }
    out
}

fn all_pass(reports: &[&SuiteReport]) -> bool {
    reports.iter().all(|r| r.passed() && !r.cases.is_empty())
}

fn c1_confluence() -> Outcome {
    let start = Instant::now();
    let (a2, a3) = (alg(2), alg(3));
    let r = [a2.diamond_check(), a3.diamond_check(), a2.diamond_check_borel(), a3.diamond_check_borel()];
    let elapsed = start.elapsed();
    let counts = (r[0].cases.len(), r[1].cases.len());
    let refs: Vec<&SuiteReport> = r.iter().collect();
    outcome(
        all_pass(&refs) && counts == (64, 729) && elapsed < CONFLUENCE_LIMIT,
        format!("{} triples (n=2), {} (n=3), {}; {elapsed:.2?}", counts.0, counts.1, summary(&refs)),
    )
}

fn c2_laplace() -> Outcome {
    let start = Instant::now();
    let r = alg(3).laplace_suite(&[1, 2]);
    let elapsed = start.elapsed();
    // 4 variants × 9 label pairs × 2 sizes
    outcome(
        r.passed() && r.cases.len() == 72 && elapsed < LAPLACE_LIMIT,
        format!("{} cases, {}; {elapsed:.2?}", r.cases.len(), summary(&[&r])),
    )
}

fn c3_antipode() -> Outcome {
    let r = alg(3).antipode_axiom_check();
    outcome(r.passed() && r.cases.len() == 18, format!("{} cases, {}", r.cases.len(), summary(&[&r])))
}

fn c4_quasidet() -> Outcome {
    let r = [alg(2).quasidet_identity_check(), alg(3).quasidet_identity_check()];
    let refs: Vec<&SuiteReport> = r.iter().collect();
    outcome(all_pass(&refs), summary(&refs))
}

/// The stated sign holds exactly on the diagonal, and the sign of
/// `|T|_{ij} = (S t^j_i)⁻¹` holds everywhere.
fn c4_diagnostic() -> bool {
    [2, 3].into_iter().all(|n| {
        let a = alg(n);
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let o = a.quasidet_outcome(i, j).unwrap();
                o.inverse_antipode_holds() && o.stated_holds() == (i == j)
            })
        })
    })
}

fn c5_ore() -> Outcome {
    let a = alg(3);
    let set = flag_ore_set(&a, &Permutation::identity(3)).unwrap();
    let e = OreEngine::new(&a, set, ORE_DENOMINATOR_LIMIT).unwrap();
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in a.all_gens() {
        let gi = a.unpack(g);
        let r = a.gen(gi.row, gi.col);
        for k in 0..e.set().len() {
            let s = &e.set().gens()[k];
            for side in [Side::Left, Side::Right] {
                checked += 1;
                match e.solve_gen(&r, k, side) {
                    Ok(w) => {
                        let sw = e.word_poly(&w.word);
                        // independent normal-form products
                        let ok = match side {
                            Side::Left => a.mul(&w.r_prime, s) == a.mul(&sw, &r),
                            Side::Right => a.mul(s, &w.r_prime) == a.mul(&r, &sw),
                        };
                        if !ok || w.word.len() > ORE_DENOMINATOR_LIMIT {
                            bad.push(format!("{r} / {} {side:?}", e.set().labels()[k]));
                        }
                    }
                    Err(err) => bad.push(format!("{r} / {} {side:?}: {err}", e.set().labels()[k])),
                }
            }
        }
    }
    let suite = e.ore_condition_suite();
    outcome(
        bad.is_empty() && checked == 54 && suite.passed(),
        format!("{checked} witnesses re-verified, {} bad; suite {}", bad.len(), summary(&[&suite])),
    )
}

fn c6_gauss() -> Outcome {
    let start = Instant::now();
    let (a2, a3) = (alg(2), alg(3));
    let mut reports = Vec::new();
    for c in charts(&a3) {
        reports.push(c.compat_report().clone());
    }
    for a in [&a2, &a3] {
        for c in charts(a) {
            reports.push(c.gauss_verify());
        }
    }
    let elapsed = start.elapsed();
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    outcome(
        all_pass(&refs) && reports.len() == 6 + 2 + 6 && elapsed < GAUSS_LIMIT,
        format!("{}; {elapsed:.2?}", summary(&refs)),
    )
}

fn c7_gamma() -> Outcome {
    let a = alg(3);
    let reports: Vec<SuiteReport> = charts(&a).iter().map(|c| c.gamma_hom_check()).collect();
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    outcome(all_pass(&refs), summary(&refs))
}

fn c8_coinvariance() -> Outcome {
    let a = alg(3);
    let reports: Vec<SuiteReport> = charts(&a).iter().map(|c| c.u_coinvariance_check()).collect();
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    let all_entries = reports.iter().all(|r| r.cases.len() == 3);
    outcome(all_pass(&refs) && all_entries, summary(&refs))
}

/// `c` with `v = c u`.
fn scalar_multiple<K: Scalar>(c: &CellChart<'_, K>, v: &OreFraction<K>, u: &OreFraction<K>) -> Option<K> {
    let (_, nums) = c.engine().common_denominator(&[v.clone(), u.clone()]).ok()?;
    nums[0].ratio_to(&nums[1])
}

/// Pairs `(σ, b)` at n = 2 where `b ▷ u` is not a scalar multiple of `u`.
fn c9_non_multiples() -> Vec<(String, String, String)> {
    let a = alg(2);
    let mut out = Vec::new();
    for c in charts(&a) {
        let u = &c.u[0][1];
        for (i, j) in [(1, 1), (2, 1), (2, 2)] {
            let v = c.triangle_action(&BorelPoly(a.gen(i, j)), u).unwrap();
            if scalar_multiple(&c, &v, u).is_none() {
                let ev = Evaluator::new(&a, Some(c.engine()));
                let shown = ev.render(&ev.simplify(Value::Frac(v))).to_string();
                out.push((c.sigma.to_string(), format!("b[{i},{j}]"), shown));
            }
        }
    }
    out
}

fn c9_stability() -> Outcome {
    let non_multiples = c9_non_multiples();
    let a2 = alg(2);
    let a3 = alg(3);
    let r2: Vec<SuiteReport> = charts(&a2).iter().map(|c| c.u_stability_check(2, false)).collect();
    let r3: Vec<SuiteReport> = charts(&a3).iter().map(|c| c.u_stability_check(2, true)).collect();
    let id3 = &r3[0];
    let others_never_fail = r3.iter().all(|r| !r.has_failures());
    let pass = non_multiples.is_empty() && r2.iter().all(SuiteReport::passed) && id3.passed() && others_never_fail;
    let shown: Vec<String> = non_multiples.iter().map(|(s, b, v)| format!("sigma={s} {b} > u = {v}")).collect();
    outcome(
        pass,
        format!(
            "non-multiples: [{}]; n=2 suites {}; n=3 id {}; n=3 others {}",
            shown.join("; "),
            summary(&r2.iter().collect::<Vec<_>>()),
            summary(&[id3]),
            summary(&r3[1..].iter().collect::<Vec<_>>())
        ),
    )
}

/// For σ = (21) at n = 2, `b[2,1] ▷ u = (q − q⁻¹)·1`: inside the algebra
/// generated by `u`, but not a multiple of `u`. Everything else holds.
fn c9_diagnostic() -> bool {
    let a = alg(2);
    let swap = gauss_decompose(&a, &Permutation::reversal(2), None).unwrap();
    let v = swap.triangle_action(&BorelPoly(a.gen(2, 1)), &swap.u[0][1]).unwrap();
    let expected = OreFraction::poly(a.constant(a.q().minus(a.q_inv())));
    let value_ok = swap.engine().fraction_equal(&v, &expected).unwrap();
    let only = c9_non_multiples()
        .iter()
        .map(|(s, b, _)| (s.clone(), b.clone()))
        .collect::<Vec<_>>()
        == vec![("2,1".to_string(), "b[2,1]".to_string())];
    let a3 = alg(3);
    let rest = charts(&a).iter().all(|c| c.u_stability_check(2, false).passed())
        && charts(&a3)
            .iter()
            .all(|c| !c.u_stability_check(2, true).has_failures())
        && gauss_decompose(&a3, &Permutation::identity(3), None)
            .unwrap()
            .u_stability_check(2, true)
            .passed();
    value_ok && only && rest
}

fn prop1_samples<K: Scalar>(c: &CellChart<'_, K>) -> Vec<(String, OreFraction<K>)> {
    let u = c.u[0][1].clone();
    let u2 = c.engine().fraction_multiply(&u, &u).unwrap();
    vec![
        ("1".into(), OreFraction::poly(c.alg().one())),
        ("u".into(), u),
        ("u^2".into(), u2),
    ]
}

fn c10_prop1() -> Outcome {
    let a = alg(2);
    let reports: Vec<SuiteReport> = charts(&a)
        .iter()
        .map(|c| c.prop1_check(Comodule::Fundamental, &prop1_samples(c)))
        .collect();
    let refs: Vec<&SuiteReport> = reports.iter().collect();
    // 3 samples × 2 basis vectors per chart
    let sized = reports.iter().all(|r| r.cases.len() == 6);
    outcome(all_pass(&refs) && sized, summary(&refs))
}

fn c11_cocycle() -> Outcome {
    let a = alg(2);
    let cs = charts(&a);
    let refs: Vec<&CellChart<'_, ScalarQ>> = cs.iter().collect();
    let r = cocycle_check(&refs, Comodule::Fundamental);
    outcome(r.passed() && !r.cases.is_empty(), summary(&[&r]))
}

fn pattern(reports: &[SuiteReport]) -> Vec<(String, Vec<Status>)> {
    reports
        .iter()
        .map(|r| (r.suite.clone(), r.cases.iter().map(|c| c.status).collect()))
        .collect()
}

fn c12_specialization() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for n in [2, 3] {
        let base = Config {
            n,
            ..Config::default()
        };
        let symbolic = pattern(&run_suite(&base).unwrap());
        for q in ["2", "3/2"] {
            let cfg = Config {
                q: q.parse::<QMode>().unwrap(),
                ..base.clone()
            };
            let special = pattern(&run_suite(&cfg).unwrap());
            let differing: Vec<&String> = symbolic
                .iter()
                .zip(&special)
                .filter(|(x, y)| x != y)
                .map(|(x, _)| &x.0)
                .collect();
            let same = symbolic.len() == special.len() && differing.is_empty();
            pass &= same;
            details.push(format!("n={n} q={q}: {}", if same { "identical".to_string() } else { format!("differs in {differing:?}") }));
        }
    }
    outcome(pass, details.join(", "))
}

fn c13_cli() -> Outcome {
    let cfg = Config {
        seed: FUZZ_SEED,
        ..Config::default()
    };
    let start = Instant::now();
    let first = run_suite(&cfg).unwrap();
    let elapsed = start.elapsed();
    let second = run_suite(&cfg).unwrap();
    let deterministic = emit_report(&cfg, &first, Format::Json) == emit_report(&cfg, &second, Format::Json);
    let seed_recorded = emit_report(&cfg, &first, Format::Json).contains(&format!("\"seed\": {FUZZ_SEED}"));
    let bad: Vec<String> = fuzz_expressions(FUZZ_SEED, FUZZ_COUNT, 3)
        .iter()
        .filter_map(|e| roundtrip(e, 3).err())
        .collect();
    let all_suites = cfg.suites.len() == SUITE_NAMES.len();
    outcome(
        deterministic && seed_recorded && bad.is_empty() && all_suites && elapsed < DEFAULT_SUITE_LIMIT,
        format!(
            "byte-identical JSON: {deterministic}; {} of {FUZZ_COUNT} round-trips fixed; default suite {elapsed:.2?}",
            FUZZ_COUNT - bad.len()
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "confluence", c1_confluence),
        (2, "Laplace expansions", c2_laplace),
        (3, "antipode axioms", c3_antipode),
        (4, "quasideterminant link", c4_quasidet),
        (5, "Ore witnesses", c5_ore),
        (6, "compatibility and Gauss factors", c6_gauss),
        (7, "section is a homomorphism", c7_gamma),
        (8, "u coinvariance", c8_coinvariance),
        (9, "u stability", c9_stability),
        (10, "kappa round trip", c10_prop1),
        (11, "transition cocycle", c11_cocycle),
        (12, "specialization consistency", c12_specialization),
        (13, "CLI determinism and round trip", c13_cli),
    ];
    let mut unexpected = Vec::new();
    for (k, name, f) in criteria {
        let o = f();
        println!("criterion {k:>2} {:<4} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !KNOWN_BLOCKED.contains(&k) {
            unexpected.push(k);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    assert!(c4_diagnostic(), "criterion 4 diagnostic changed");
    assert!(c9_diagnostic(), "criterion 9 diagnostic changed");
}
