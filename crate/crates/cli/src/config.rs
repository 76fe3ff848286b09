//! Flat key-value config files mirroring the estimator knobs:
//!
//! ```text
//! # comment
//! cardinality = 4
//! restarts = 32
//! max_iterations = 2000
//! objective_tolerance = 1e-8
//! seed = 7
//! ```
//!
//! `key value` without the equals sign is accepted too. Command-line flags
//! override file values.

use std::path::Path;

use eofkit::eof::EofConfig;

use crate::{CliError, CliResult};

pub fn load_config(path: &Path) -> CliResult<EofConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn parse_config(text: &str) -> Result<EofConfig, String> {
    let mut cfg = EofConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => match line.split_once(char::is_whitespace) {
                Some((k, v)) => (k.trim(), v.trim()),
                None => return Err(format!("line {}: expected `key = value`", lineno + 1)),
            },
        };
        let bad = |what: &str| format!("line {}: {what} `{value}` for key `{key}`", lineno + 1);
        match key {
            "cardinality" => {
                cfg.cardinality =
                    Some(value.parse().map_err(|_| bad("invalid positive integer"))?);
            }
            "restarts" => {
                cfg.restarts = value.parse().map_err(|_| bad("invalid positive integer"))?;
            }
            "max_iterations" => {
                cfg.max_iterations = value.parse().map_err(|_| bad("invalid positive integer"))?;
            }
            "objective_tolerance" => {
                cfg.objective_tolerance = value.parse().map_err(|_| bad("invalid number"))?;
            }
            "seed" => {
                cfg.seed = value.parse().map_err(|_| bad("invalid unsigned integer"))?;
            }
            other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_separators_and_comments() {
        let cfg = parse_config(
            "# tuning\ncardinality = 4\nrestarts 16\nobjective_tolerance = 1e-9\nseed = 11\n",
        )
        .unwrap();
        assert_eq!(cfg.cardinality, Some(4));
        assert_eq!(cfg.restarts, 16);
        assert_eq!(cfg.objective_tolerance, 1e-9);
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.max_iterations, EofConfig::default().max_iterations);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(parse_config("restart = 3\n").is_err());
        assert!(parse_config("restarts = many\n").is_err());
        assert!(parse_config("seed = -4\n").is_err());
    }
}
