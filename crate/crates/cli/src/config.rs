//! Flat key=value configuration files for the rule thresholds.

use std::path::Path;

use opspam_core::rules::RuleConfig;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {line}: {reason}")]
    Invalid { line: usize, reason: String },
}

/// Parse a config file body. Recognized keys: `min_words`, `min_chars`,
/// `helpful_votes_threshold`, `divergence_threshold`,
/// `mention_min_token_len`. Missing keys keep their defaults; every value
/// must be a positive integer. Blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<RuleConfig, ConfigError> {
    let mut config = RuleConfig::default();
    for (index, raw_line) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Invalid {
            line: line_number,
            reason: format!("expected key=value, got \"{line}\""),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parsed: u64 = value.parse().map_err(|_| ConfigError::Invalid {
            line: line_number,
            reason: format!("value for {key} must be an integer, got \"{value}\""),
        })?;
        if parsed == 0 {
            return Err(ConfigError::Invalid {
                line: line_number,
                reason: format!("{key} must be positive"),
            });
        }
        match key {
            "min_words" => config.min_words = parsed as usize,
            "min_chars" => config.min_chars = parsed as usize,
            "helpful_votes_threshold" => config.helpful_votes_threshold = parsed as u32,
            "divergence_threshold" => config.divergence_threshold = parsed as u32,
            "mention_min_token_len" => config.mention_min_token_len = parsed as usize,
            other => {
                return Err(ConfigError::Invalid {
                    line: line_number,
                    reason: format!("unknown key \"{other}\""),
                })
            }
        }
    }
    Ok(config)
}

/// Read and parse a config file.
pub fn load_config(path: &Path) -> Result<RuleConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_keeps_defaults() {
        assert_eq!(parse_config("").unwrap(), RuleConfig::default());
        assert_eq!(
            parse_config("# just a comment\n\n").unwrap(),
            RuleConfig::default()
        );
    }

    #[test]
    fn overrides_apply() {
        let config = parse_config("min_words=20\nhelpful_votes_threshold=5\n").unwrap();
        assert_eq!(config.min_words, 20);
        assert_eq!(config.helpful_votes_threshold, 5);
        assert_eq!(config.min_chars, 50);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let err = parse_config("min_wordz=20\n").unwrap_err();
        assert!(err.to_string().contains("unknown key"));
    }

    #[test]
    fn zero_threshold_is_rejected() {
        let err = parse_config("divergence_threshold=0\n").unwrap_err();
        assert!(err.to_string().contains("positive"));
    }

    #[test]
    fn garbage_value_is_rejected() {
        let err = parse_config("min_words=ten\n").unwrap_err();
        assert!(err.to_string().contains("integer"));
    }

    #[test]
    fn bundled_default_file_parses_to_defaults() {
        let text = include_str!("../fixtures/config/default.conf");
        assert_eq!(parse_config(text).unwrap(), RuleConfig::default());
    }
}
