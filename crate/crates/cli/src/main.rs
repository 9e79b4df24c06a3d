use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use thiserror::Error;

use qflag_cli::eval::find_word;
use qflag_cli::{emit_report, exit_code, parse_expr, run_suite, Config, ConfigError, EvalError, Evaluator, Format, ParseError, QMode, RunError, Value};
use qflag_core::gaussbundle::{flag_ore_set, gauss_decompose, Permutation};
use qflag_core::orelocal::{OreEngine, OreSet};
use qflag_core::qalgebra::{NcPoly, QMatrixAlgebra};
use qflag_core::qminor::MinorSpec;
use qflag_core::report::SuiteReport;
use qflag_core::scalar::{Scalar, ScalarQ};

#[derive(Parser)]
#[command(name = "qflag", version, about = "Exact computations in quantum matrix groups and their cell charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Matrix size (1, 2 or 3).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// `symbolic` or a nonzero rational such as `3/2`.
    #[arg(long, global = true)]
    q: Option<String>,
    /// Chart permutation(s): `2,3,1`, `id`, `rev`, `all`, or a `;`-separated list.
    #[arg(long, global = true)]
    sigma: Option<String>,
    /// Longest Ore denominator word searched.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Seed for sampled suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Keep per-case wall times in reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        expr: String,
        /// Ore set whose generators may be inverted: `flag`, `D`, or
        /// `;`-separated polynomial expressions.
        #[arg(long)]
        set: Option<String>,
    },
    /// Print the quantum determinant.
    Qdet,
    /// Print the quantum minor `rows|cols`, e.g. `1,2|2,3`.
    Minor { spec: String },
    /// Check the Laplace expansions for one label pair, or all of them.
    LaplaceCheck {
        #[arg(long)]
        rows: Option<String>,
        #[arg(long)]
        cols: Option<String>,
        /// 1..=4; all variants when omitted.
        #[arg(long)]
        variant: Option<u8>,
    },
    /// Solve the left Ore condition `r' s = s' r`.
    OreSolve {
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
    },
    /// Gauss decomposition of a chart and its verification.
    Gauss {
        /// Parabolic subset `I'` of `1..n-1`, e.g. `1`.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Run the named suites (comma-separated).
    Check {
        #[arg(long)]
        suite: String,
    },
    /// Run every configured suite and emit the JSON report.
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}", .err.annotate(.text))]
    Parse { text: String, err: ParseError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Core(#[from] qflag_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Config(c) => CliError::Config(c),
            RunError::Core(c) => CliError::Core(c),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qflag_core::Error::OreNotFound { .. }) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
            CliError::Eval(EvalError::Core(qflag_core::Error::OreNotFound { .. })) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn config(cli: &Cli) -> CliResult<Config> {
    let mut cfg = match &cli.config {
        Some(path) => Config::parse(&std::fs::read_to_string(path)?)?,
        None => Config::default(),
    };
    if let Some(n) = cli.n {
        cfg.n = n;
    }
    if let Some(q) = &cli.q {
        cfg.q = q
            .parse()
            .map_err(|m| ConfigError::Value { key: "q".into(), message: m })?;
    }
    if let Some(s) = &cli.sigma {
        cfg.set_sigmas(s)?;
    }
    if let Some(b) = cli.bound {
        cfg.ore_bound = b;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.timings |= cli.timings;
    if let Command::Check { suite } = &cli.command {
        cfg.suites = suite.split(',').map(|s| s.trim().to_string()).collect();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> CliResult<i32> {
    let cfg = config(cli)?;
    match &cfg.q {
        QMode::Symbolic => command(cli, &cfg, ScalarQ::q()),
        QMode::Rational(r) => command::<BigRational>(cli, &cfg, r.clone()),
    }
}

fn parse<K: Scalar>(alg: &QMatrixAlgebra<K>, text: &str) -> CliResult<qflag_cli::Expr> {
    parse_expr(text, alg.n()).map_err(|err| CliError::Parse { text: text.to_string(), err })
}

fn polynomial<K: Scalar>(alg: &QMatrixAlgebra<K>, text: &str) -> CliResult<NcPoly<K>> {
    match Evaluator::new(alg, None).normalize(&parse(alg, text)?)? {
        Value::Scalar(c) => Ok(alg.constant(c)),
        Value::Poly(p) => Ok(p),
        _ => Err(CliError::Usage(format!("`{text}` is not a polynomial"))),
    }
}

fn labels(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad label list `{text}`"))))
        .collect()
}

/// The single chart permutation of the configuration.
fn one_sigma(cfg: &Config) -> CliResult<Permutation> {
    match &cfg.sigmas {
        None => Ok(Permutation::identity(cfg.n)),
        Some(v) if v.len() == 1 => Ok(v[0].clone()),
        Some(_) => Err(CliError::Usage("expected a single --sigma".into())),
    }
}

fn ore_set<K: Scalar>(alg: &QMatrixAlgebra<K>, cfg: &Config, spec: &str) -> CliResult<OreSet<K>> {
    match spec.trim() {
        "flag" => Ok(flag_ore_set(alg, &one_sigma(cfg)?)?),
        "D" => Ok(OreSet::with_labels("D", vec![alg.qdet()], vec!["D".into()])?),
        list => {
            let items: Vec<&str> = list.split(';').map(str::trim).collect();
            let gens = items.iter().map(|t| polynomial(alg, t)).collect::<CliResult<Vec<_>>>()?;
            let labels = items.iter().map(|t| parse(alg, t).map(|e| e.to_string())).collect::<CliResult<Vec<_>>>()?;
            Ok(OreSet::with_labels(list, gens, labels)?)
        }
    }
}

fn emit(cli: &Cli, cfg: &Config, reports: &[SuiteReport]) -> i32 {
    let format = if cli.json { Format::Json } else { Format::Text };
    print!("{}", emit_report(cfg, reports, format));
    exit_code(reports)
}

fn command<K: Scalar>(cli: &Cli, cfg: &Config, q: K) -> CliResult<i32> {
    let alg = QMatrixAlgebra::new(cfg.n, q)?;
    match &cli.command {
        Command::Normalize { expr, set } => {
            let e = parse(&alg, expr)?;
            let engine = match set {
                Some(s) => Some(OreEngine::new(&alg, ore_set(&alg, cfg, s)?, cfg.ore_bound)?),
                None => None,
            };
            let ev = Evaluator::new(&alg, engine.as_ref());
            let v = ev.normalize(&e)?;
            println!("{}", ev.render(&v));
            Ok(0)
        }
        Command::Qdet => {
            println!("{}", alg.qdet());
            Ok(0)
        }
        Command::Minor { spec } => {
            let (r, c) = spec
                .split_once('|')
                .ok_or_else(|| CliError::Usage(format!("expected `rows|cols`, found `{spec}`")))?;
            let m = MinorSpec::new(labels(r)?, labels(c)?)?;
            println!("{}", alg.qminor(&m)?);
            Ok(0)
        }
        Command::LaplaceCheck { rows, cols, variant } => {
            let reports = match (rows, cols) {
                (Some(r), Some(c)) => {
                    let (k, l) = (labels(r)?, labels(c)?);
                    let variants = variant.map_or(vec![1, 2, 3, 4], |v| vec![v]);
                    variants
                        .into_iter()
                        .map(|v| alg.laplace_check(&k, &l, v))
                        .collect::<qflag_core::Result<Vec<_>>>()?
                }
                (None, None) => {
                    let sizes: Vec<usize> = if cfg.n == 1 { vec![1] } else { (1..cfg.n).collect() };
                    vec![alg.laplace_suite(&sizes)]
                }
                _ => return Err(CliError::Usage("give both --rows and --cols, or neither".into())),
            };
            Ok(emit(cli, cfg, &reports))
        }
        Command::OreSolve { set, r, s } => {
            let engine = OreEngine::new(&alg, ore_set(&alg, cfg, set)?, cfg.ore_bound)?;
            let rp = polynomial(&alg, r)?;
            let sp = polynomial(&alg, s)?;
            let word = find_word(&engine, &sp)
                .ok_or_else(|| CliError::Usage(format!("`{s}` is not a product of at most {} Ore generators", cfg.ore_bound)))?;
            let (s2, r2) = engine.ore_solve(&rp, &word)?;
            // independent check: r' s = s' r
            let ok = alg.mul(&r2, &sp) == alg.mul(&engine.word_poly(&s2), &rp);
            println!("s' = {}", engine.set().render_word(&s2));
            println!("r' = {r2}");
            println!("r' s = s' r: {}", if ok { "verified" } else { "FAILED" });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Gauss { blocks } => {
            let sigma = one_sigma(cfg)?;
            let blocks = blocks.as_deref().map(labels).transpose()?;
            let chart = gauss_decompose(&alg, &sigma, blocks.as_deref())?;
            let report = chart.gauss_verify();
            if !cli.json {
                println!("sigma = {sigma}");
                println!("S = {{{}}}", chart.set().labels().join(", "));
                println!("U =\n{}", chart.render_matrix(&chart.u));
                println!("A =\n{}", chart.render_matrix(&chart.a));
            }
            Ok(emit(cli, cfg, &[report]))
        }
        Command::Check { .. } => {
            let reports = run_suite(cfg)?;
            Ok(emit(cli, cfg, &reports))
        }
        Command::Report { out } => {
            let reports = run_suite(cfg)?;
            let text = emit_report(cfg, &reports, Format::Json);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(exit_code(&reports))
        }
    }
}
