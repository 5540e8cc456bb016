//! `key = value` run configuration.

use std::path::PathBuf;

use serde::Serialize;
use teardrop_core::scalar::{parse_rational, BigRational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn serialize_q0<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub cutoff: u32,
    pub tolerance: f64,
    /// Largest `|d|` accepted by `grading certify`.
    pub degree_cap: u32,
    pub output: Option<PathBuf>,
    pub seed: u64,
    #[serde(serialize_with = "serialize_q0")]
    pub q0: Option<BigRational>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cutoff: 10,
            tolerance: 1e-12,
            degree_cap: 8,
            output: None,
            seed: 0,
            q0: None,
        }
    }
}

/// A rational `p/r` or integer. Decimal and exponent notation are refused.
pub fn parse_q0(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("q0 = {s}: write q0 as a rational p/r, not a float"));
    }
    parse_rational(s).ok_or_else(|| format!("q0 = {s} is not a rational number"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ConfigError::Line {
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, found '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| err(format!("{key}: {what}"));
            match key {
                "cutoff" => {
                    cfg.cutoff = value
                        .parse()
                        .map_err(|_| bad("expected a nonnegative integer"))?
                }
                "tolerance" => {
                    cfg.tolerance = value.parse().map_err(|_| bad("expected a number"))?
                }
                "degree_cap" => {
                    cfg.degree_cap = value
                        .parse()
                        .map_err(|_| bad("expected a nonnegative integer"))?
                }
                "output" => cfg.output = Some(PathBuf::from(value)),
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| bad("expected a nonnegative integer"))?
                }
                "q0" => cfg.q0 = Some(parse_q0(value).map_err(err)?),
                _ => return Err(err(format!("unknown key '{key}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(ConfigError::Invalid(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.cutoff < 1 {
            return Err(ConfigError::Invalid("cutoff must be at least 1".into()));
        }
        if let Some(q) = &self.q0 {
            if *q <= BigRational::from_integer(0.into())
                || *q >= BigRational::from_integer(1.into())
            {
                return Err(ConfigError::Invalid(format!("q0 = {q} is not in (0, 1)")));
            }
        }
        Ok(())
    }
}
