//! Seeded random expression trees for parser round-trip testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qflag_core::report::{CaseResult, SuiteReport};

use crate::expr::{parse_expr, Expr, MulOp, Sign};

fn labels(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=n).collect::<Vec<_>>().choose_multiple(rng, m).copied().collect();
    v.sort_unstable();
    v
}

fn atom(rng: &mut ChaCha8Rng, n: usize) -> Expr {
    match rng.gen_range(0..5) {
        0 | 1 => Expr::Gen(rng.gen_range(1..=n), rng.gen_range(1..=n)),
        2 => {
            let m = rng.gen_range(1..=n);
            Expr::Minor(labels(rng, n, m), labels(rng, n, m))
        }
        3 => [Expr::Det, Expr::Q][rng.gen_range(0..2)].clone(),
        _ => Expr::Int(rng.gen_range(0..20)),
    }
}

/// A grammatical tree of depth at most `depth` over generators of size `n`.
pub fn random_expr(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return atom(rng, n);
    }
    let sub = |rng: &mut ChaCha8Rng| random_expr(rng, n, depth - 1);
    match rng.gen_range(0..5) {
        0 => {
            let k = rng.gen_range(2..=3);
            Expr::Sum(
                (0..k)
                    .map(|_| {
                        let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                        (s, sub(rng))
                    })
                    .collect(),
            )
        }
        1 => {
            let k = rng.gen_range(2..=3);
            Expr::Product(
                (0..k)
                    .map(|i| {
                        let op = if i > 0 && rng.gen_bool(0.3) { MulOp::Div } else { MulOp::Mul };
                        (op, sub(rng))
                    })
                    .collect(),
            )
        }
        2 => Expr::Pow(Box::new(sub(rng)), rng.gen_range(-3..=3)),
        3 => Expr::Antipode(Box::new(sub(rng))),
        _ => Expr::Inv(Box::new(sub(rng))),
    }
}

pub fn fuzz_expressions(seed: u64, count: usize, n: usize) -> Vec<Expr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_expr(&mut rng, n, 4)).collect()
}

/// `print ∘ parse ∘ print = print` for one tree; `Err` carries the witness.
pub fn roundtrip(e: &Expr, n: usize) -> Result<(), String> {
    let s = e.to_string();
    match parse_expr(&s, n) {
        Ok(back) if back.to_string() == s => Ok(()),
        Ok(back) => Err(format!("`{s}` reprints as `{back}`")),
        Err(err) => Err(format!("`{s}` does not parse: {err}")),
    }
}

/// Round-trips `count` seeded trees, in cases of 100.
pub fn roundtrip_suite(seed: u64, count: usize, n: usize) -> SuiteReport {
    let exprs = fuzz_expressions(seed, count, n);
    let mut report = SuiteReport::new("roundtrip");
    for (k, chunk) in exprs.chunks(100).enumerate() {
        let name = format!("seed={seed} expressions {}..{}", k * 100, k * 100 + chunk.len());
        let bad: Vec<String> = chunk.iter().filter_map(|e| roundtrip(e, n).err()).collect();
        report.push(CaseResult::check(
            name,
            bad.is_empty(),
            format!("{} printed", chunk.len()),
            format!("{} fixed points", chunk.len() - bad.len()),
            bad.first().cloned().unwrap_or_default(),
        ));
    }
    report
}
