//! Flat `key = value` configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are an
//! error so typos do not silently fall back to defaults.

use std::path::{Path, PathBuf};

use frobinc::bruteforce::DEFAULT_MAX_PAIRS;
use frobinc::codes::DEFAULT_MAX_DIM;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "FROBINC_CONFIG";
/// Looked up in the working directory when neither `--config` nor the
/// environment variable is set.
pub const DEFAULT_CONFIG_FILE: &str = "frobinc.conf";

/// Bits of an `f64` mantissa; the most precision a float output can carry.
pub const MAX_PRECISION_BITS: u32 = 53;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_pairs: u128,
    pub max_code_dim: usize,
    /// Mantissa bits shown for floating-point values in plain output.
    pub precision: u32,
    /// Worker threads; 0 means one per available core.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_pairs: DEFAULT_MAX_PAIRS,
            max_code_dim: DEFAULT_MAX_DIM,
            precision: MAX_PRECISION_BITS,
            threads: 0,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`, got `{line}`", i + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: {key} must be {what}, got `{value}`", i + 1);
            match key {
                "max_pairs" => {
                    cfg.max_pairs = value.parse().map_err(|_| bad("a nonnegative integer"))?
                }
                "max_code_dim" => {
                    cfg.max_code_dim = value.parse().map_err(|_| bad("a nonnegative integer"))?
                }
                "precision" => {
                    cfg.precision = value
                        .parse()
                        .ok()
                        .filter(|b| (1..=MAX_PRECISION_BITS).contains(b))
                        .ok_or_else(|| bad("an integer in 1..=53"))?
                }
                "threads" => {
                    cfg.threads = value.parse().map_err(|_| bad("a nonnegative integer"))?
                }
                _ => return Err(format!("line {}: unknown key `{key}`", i + 1)),
            }
        }
        Ok(cfg)
    }

    /// Resolve the config file: explicit path, then the environment
    /// variable, then `frobinc.conf` if it exists. An explicitly named file
    /// must exist.
    pub fn load(explicit: Option<&Path>) -> Result<Config, String> {
        let path: Option<PathBuf> = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Some(PathBuf::from(p)),
                _ => {
                    let p = PathBuf::from(DEFAULT_CONFIG_FILE);
                    p.is_file().then_some(p)
                }
            },
        };
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Config::parse(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }

    /// Decimal digits that `precision` mantissa bits can represent.
    pub fn decimal_digits(&self) -> usize {
        (self.precision as f64 * std::f64::consts::LOG10_2)
            .floor()
            .max(1.0) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg = Config::parse(
            "# budgets\nmax_pairs = 1000\n\nmax_code_dim=20\nprecision = 24\nthreads = 2\n",
        )
        .unwrap();
        assert_eq!(
            cfg,
            Config {
                max_pairs: 1000,
                max_code_dim: 20,
                precision: 24,
                threads: 2
            }
        );
        assert_eq!(cfg.decimal_digits(), 7);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Config::parse("max_pairs 10").is_err());
        assert!(Config::parse("max_pairs = ten").is_err());
        assert!(Config::parse("precision = 64").is_err());
        assert!(Config::parse("colour = blue").is_err());
    }

    #[test]
    fn defaults() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        assert_eq!(Config::default().decimal_digits(), 15);
    }
}
