//! Run configuration: defaults, a flat key=value file, and flag overrides.
//!
//! Flags always win over the file; the file wins over defaults. Unknown
//! keys are errors so typos cannot silently change a run.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

use crate::envelope::Failure;
use irrk3::oracle::{is_prime, DEFAULT_FIELD, MIN_FIELD};

/// Output document format for table emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[value(name = "md", alias = "markdown")]
    Markdown,
}

impl OutputFormat {
    fn parse_key(value: &str) -> Result<Self, String> {
        match value {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            other => Err(format!(
                "output_format must be json, csv, or markdown; got {other:?}"
            )),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Root seed for all randomized oracle work.
    pub seed: u64,
    /// Prime order of the coefficient field for fiber measurements.
    pub field_size: u64,
    /// Default document format for `table`.
    pub output_format: OutputFormat,
    /// Directory holding memoized verification payloads; off when absent.
    pub cache_path: Option<PathBuf>,
    /// Inclusive genus window accepted by range sweeps.
    pub genus_range: (u64, u64),
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            field_size: DEFAULT_FIELD,
            output_format: OutputFormat::Json,
            cache_path: None,
            genus_range: (2, 2000),
        }
    }
}

impl RunConfig {
    /// Applies one `key = value` pair from a config file.
    fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| format!("seed must be a nonnegative integer; got {value:?}"))?;
            }
            "field_size" => {
                self.field_size = value
                    .parse()
                    .map_err(|_| format!("field_size must be an integer; got {value:?}"))?;
            }
            "output_format" => {
                self.output_format = OutputFormat::parse_key(value)?;
            }
            "cache_path" => {
                self.cache_path = Some(PathBuf::from(value));
            }
            "genus_min" => {
                self.genus_range.0 = value
                    .parse()
                    .map_err(|_| format!("genus_min must be an integer; got {value:?}"))?;
            }
            "genus_max" => {
                self.genus_range.1 = value
                    .parse()
                    .map_err(|_| format!("genus_max must be an integer; got {value:?}"))?;
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }

    /// Enforces the documented invariants after all sources are merged.
    pub fn validate(&self) -> Result<(), String> {
        let (lo, hi) = self.genus_range;
        if lo < 2 {
            return Err(format!("genus_min must be at least 2; got {lo}"));
        }
        if hi < lo {
            return Err(format!("genus_max ({hi}) is below genus_min ({lo})"));
        }
        if self.field_size < MIN_FIELD || !is_prime(self.field_size) {
            return Err(format!(
                "field_size must be a prime at least {MIN_FIELD}; got {}",
                self.field_size
            ));
        }
        Ok(())
    }
}

/// Parses the flat config format: one `key = value` per line, `#` starts a
/// comment, blank lines ignored.
pub fn parse_config(text: &str) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key = value", idx + 1));
        };
        cfg.apply(key.trim(), value.trim())
            .map_err(|e| format!("line {}: {e}", idx + 1))?;
    }
    Ok(cfg)
}

/// Loads the config file when given, otherwise the defaults. Validation
/// runs later, after command-line overrides are applied.
pub fn load_config(path: Option<&Path>) -> Result<RunConfig, Failure> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::io(&format!("reading config {}", p.display()), &e))?;
            parse_config(&text).map_err(|e| Failure::config(format!("{}: {e}", p.display())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.field_size, 997);
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.cache_path, None);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn file_overrides_defaults() {
        let cfg = parse_config(
            "# comment\nseed = 7\nfield_size=1009\noutput_format = markdown\n\ncache_path = /tmp/c\ngenus_min = 4\ngenus_max = 100\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.field_size, 1009);
        assert_eq!(cfg.output_format, OutputFormat::Markdown);
        assert_eq!(cfg.cache_path.as_deref(), Some(Path::new("/tmp/c")));
        assert_eq!(cfg.genus_range, (4, 100));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_config("sede = 7\n").unwrap_err();
        assert!(err.contains("unknown config key"), "{err}");
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_config("seed 7\n").is_err());
        assert!(parse_config("seed = seven\n").is_err());
    }

    #[test]
    fn validation_catches_bad_values() {
        let mut cfg = RunConfig::default();
        cfg.field_size = 996;
        assert!(cfg.validate().is_err());
        cfg.field_size = 97; // prime but below the floor
        assert!(cfg.validate().is_err());
        cfg = RunConfig::default();
        cfg.genus_range = (1, 10);
        assert!(cfg.validate().is_err());
        cfg.genus_range = (10, 9);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn comments_may_trail_values() {
        let cfg = parse_config("seed = 3 # the run seed\n").unwrap();
        assert_eq!(cfg.seed, 3);
    }
}
