//! Run configuration: flags > `SDIGITS_*` environment > TOML file > defaults.

use std::path::Path;

use clap::{Args, ValueEnum};
use sdigits_core::berndenom::{DEFAULT_ORACLE_BOUND, MAX_ORACLE_BOUND};
use sdigits_core::enumerate::{
    EnumConfig, DEFAULT_MAX_LIMIT, DEFAULT_SEGMENT_SIZE, MIN_SEGMENT_SIZE,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Jsonl,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub max_limit: u64,
    pub segment_size: u64,
    pub threads: usize,
    pub oracle_bound: usize,
    pub output_format: Option<OutputFormat>,
}

impl RunConfig {
    pub fn enum_config(&self) -> EnumConfig {
        EnumConfig {
            max_limit: self.max_limit,
            segment_size: self.segment_size,
            threads: self.threads,
        }
    }
}

/// Every field optional, so layers can be merged.
#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    /// Largest enumeration limit accepted without `--extended`.
    #[arg(long, global = true, env = "SDIGITS_MAX_LIMIT")]
    pub max_limit: Option<u64>,
    /// Numbers per sieve segment (at least 1000).
    #[arg(long, global = true, env = "SDIGITS_SEGMENT_SIZE")]
    pub segment_size: Option<u64>,
    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "SDIGITS_THREADS")]
    pub threads: Option<usize>,
    /// Largest n for the exact-rational Bernoulli oracle (at most 200).
    #[arg(long, global = true, env = "SDIGITS_ORACLE_BOUND")]
    pub oracle_bound: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long = "format", global = true, env = "SDIGITS_FORMAT", value_enum)]
    #[serde(rename = "output_format")]
    pub output_format: Option<OutputFormat>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// `self` wins over `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            max_limit: self.max_limit.or(lower.max_limit),
            segment_size: self.segment_size.or(lower.segment_size),
            threads: self.threads.or(lower.threads),
            oracle_bound: self.oracle_bound.or(lower.oracle_bound),
            output_format: self.output_format.or(lower.output_format),
        }
    }

    pub fn resolve(self) -> Result<RunConfig, String> {
        let defaults = EnumConfig::default();
        let cfg = RunConfig {
            max_limit: self.max_limit.unwrap_or(DEFAULT_MAX_LIMIT),
            segment_size: self.segment_size.unwrap_or(DEFAULT_SEGMENT_SIZE),
            threads: self.threads.unwrap_or(defaults.threads),
            oracle_bound: self.oracle_bound.unwrap_or(DEFAULT_ORACLE_BOUND),
            output_format: self.output_format,
        };
        if cfg.segment_size < MIN_SEGMENT_SIZE {
            return Err(format!("segment_size must be at least {MIN_SEGMENT_SIZE}"));
        }
        if cfg.threads == 0 {
            return Err("threads must be at least 1".into());
        }
        if cfg.oracle_bound > MAX_ORACLE_BOUND {
            return Err(format!("oracle_bound must be at most {MAX_ORACLE_BOUND}"));
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file: ConfigLayer =
            toml::from_str("threads = 3\nsegment_size = 5000\noutput_format = \"csv\"").unwrap();
        let flags = ConfigLayer {
            threads: Some(7),
            ..Default::default()
        };
        let cfg = flags.over(file).resolve().unwrap();
        assert_eq!(cfg.threads, 7);
        assert_eq!(cfg.segment_size, 5000);
        assert_eq!(cfg.output_format, Some(OutputFormat::Csv));
        assert_eq!(cfg.max_limit, DEFAULT_MAX_LIMIT);
    }

    #[test]
    fn invariants_are_enforced() {
        let bad = |layer: ConfigLayer| layer.resolve().is_err();
        assert!(bad(ConfigLayer {
            segment_size: Some(999),
            ..Default::default()
        }));
        assert!(bad(ConfigLayer {
            threads: Some(0),
            ..Default::default()
        }));
        assert!(bad(ConfigLayer {
            oracle_bound: Some(201),
            ..Default::default()
        }));
        assert!(toml::from_str::<ConfigLayer>("thread = 1").is_err());
    }
}
