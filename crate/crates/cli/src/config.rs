//! Run configuration: a flat `key = value` file, overridable from flags.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use qflag_core::gaussbundle::Permutation;
use qflag_core::scalar::{format_rational, parse_rational};
use serde::Serialize;
use thiserror::Error;

use crate::suites::SUITE_NAMES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {message}")]
    Value { key: String, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// How `q` is represented: as an indeterminate, or specialized to a nonzero
/// rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    Symbolic,
    Rational(BigRational),
}

impl FromStr for QMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "symbolic" || s == "q" {
            return Ok(QMode::Symbolic);
        }
        match parse_rational(s) {
            Some(r) if r.is_zero() => Err("q must be nonzero".into()),
            Some(r) => Ok(QMode::Rational(r)),
            None => Err(format!("expected `symbolic` or a rational p/r, found `{s}`")),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => f.write_str("symbolic"),
            QMode::Rational(r) => f.write_str(&format_rational(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub n: usize,
    pub q: QMode,
    /// Longest `u`-word used when expressing `b ▷ u` in the chart coordinates.
    pub max_degree: usize,
    pub ore_bound: usize,
    /// `None` runs every permutation of `n`.
    pub sigmas: Option<Vec<Permutation>>,
    pub suites: Vec<String>,
    pub seed: u64,
    /// Keep per-case wall times in reports (otherwise zeroed for
    /// byte-reproducible output).
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n: 2,
            q: QMode::Symbolic,
            max_degree: 6,
            ore_bound: 3,
            sigmas: None,
            suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
            seed: 0,
            timings: false,
        }
    }
}

/// `"all"`, `"id"`, `"rev"`, or `;`-separated image lists such as `2,3,1; 1,3,2`.
pub fn parse_sigmas(text: &str, n: usize) -> Result<Option<Vec<Permutation>>, String> {
    let text = text.trim();
    if text == "all" {
        return Ok(None);
    }
    text.split(';')
        .map(|p| match p.trim() {
            "id" => Ok(Permutation::identity(n)),
            "rev" => Ok(Permutation::reversal(n)),
            p => p.parse::<Permutation>().map_err(|e| e.to_string()),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn parse_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

impl Config {
    /// Reads `key = value` lines; `#` starts a comment. Keys: `n`, `q`,
    /// `maxDegree`, `oreBound`, `sigmas`, `suites`, `seed`, `timings`.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        let mut sigmas = None;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: k + 1,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |message: String| ConfigError::Value {
                key: key.to_string(),
                message,
            };
            match key {
                "n" => cfg.n = value.parse().map_err(|e| bad(format!("{e}")))?,
                "q" => cfg.q = value.parse().map_err(bad)?,
                "maxDegree" => cfg.max_degree = value.parse().map_err(|e| bad(format!("{e}")))?,
                "oreBound" => cfg.ore_bound = value.parse().map_err(|e| bad(format!("{e}")))?,
                "seed" => cfg.seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                "timings" => cfg.timings = value.parse().map_err(|e| bad(format!("{e}")))?,
                "suites" => cfg.suites = parse_list(value),
                // needs n, which may come later in the file
                "sigmas" => sigmas = Some(value.to_string()),
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        if let Some(s) = sigmas {
            cfg.set_sigmas(&s)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set_sigmas(&mut self, text: &str) -> Result<(), ConfigError> {
        self.sigmas = parse_sigmas(text, self.n).map_err(|message| ConfigError::Value {
            key: "sigmas".into(),
            message,
        })?;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, message: String| ConfigError::Value {
            key: key.into(),
            message,
        };
        if !(1..=3).contains(&self.n) {
            return Err(bad("n", format!("{} is not in 1..=3", self.n)));
        }
        if self.ore_bound == 0 {
            return Err(bad("oreBound", "must be at least 1".into()));
        }
        if let QMode::Rational(r) = &self.q {
            if r.is_zero() {
                return Err(bad("q", "q must be nonzero".into()));
            }
        }
        if let Some(ss) = &self.sigmas {
            if let Some(s) = ss.iter().find(|s| s.n() != self.n) {
                return Err(bad("sigmas", format!("{s} is not a permutation of 1..={}", self.n)));
            }
        }
        if let Some(s) = self.suites.iter().find(|s| !SUITE_NAMES.contains(&s.as_str())) {
            return Err(ConfigError::UnknownSuite(s.clone()));
        }
        Ok(())
    }

    /// The permutations to run, in lexicographic order when unspecified.
    pub fn sigmas(&self) -> Vec<Permutation> {
        self.sigmas.clone().unwrap_or_else(|| Permutation::all(self.n))
    }

    pub fn view(&self) -> ConfigView {
        ConfigView {
            n: self.n,
            q: self.q.to_string(),
            max_degree: self.max_degree,
            ore_bound: self.ore_bound,
            sigmas: self.sigmas().iter().map(|s| s.to_string()).collect(),
            suites: self.suites.clone(),
            seed: self.seed,
            timings: self.timings,
        }
    }
}

/// The resolved configuration as recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConfigView {
    pub n: usize,
    pub q: String,
    pub max_degree: usize,
    pub ore_bound: usize,
    pub sigmas: Vec<String>,
    pub suites: Vec<String>,
    pub seed: u64,
    pub timings: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::parse("").unwrap();
        assert_eq!(c, Config::default());
        assert_eq!((c.n, c.max_degree, c.ore_bound), (2, 6, 3));
        assert_eq!(c.q, QMode::Symbolic);
    }

    #[test]
    fn keys() {
        let c = Config::parse("sigmas = id; 3,2,1  # two charts\nn = 3\nq = 3/2\nsuites = thm9, thm10\nseed=7").unwrap();
        assert_eq!(c.n, 3);
        assert_eq!(c.sigmas(), vec![Permutation::identity(3), Permutation::reversal(3)]);
        assert_eq!(c.q.to_string(), "3/2");
        assert_eq!(c.suites, vec!["thm9", "thm10"]);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn rejects() {
        assert!(matches!(Config::parse("n = 4"), Err(ConfigError::Value { .. })));
        assert!(matches!(Config::parse("q = 0"), Err(ConfigError::Value { .. })));
        assert!(matches!(Config::parse("oreBound = 0"), Err(ConfigError::Value { .. })));
        assert!(matches!(Config::parse("colour = red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(Config::parse("suites = nope"), Err(ConfigError::UnknownSuite(_))));
        assert!(matches!(Config::parse("just words"), Err(ConfigError::Syntax { line: 1, .. })));
    }
}
