//! Expression language, suite runner and report emission for `qflag`.

pub mod config;
pub mod emit;
pub mod eval;
pub mod expr;
pub mod fuzz;
pub mod suites;

pub use config::{Config, ConfigError, QMode};
pub use emit::{emit_report, exit_code, Format};
pub use eval::{EvalError, Evaluator, Value};
pub use expr::{parse_expr, Expr, ParseError};
pub use suites::{run_suite, RunError, SUITE_NAMES};
