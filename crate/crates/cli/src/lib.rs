//! File ingestion, bundled lexicons, configuration and the command layer
//! for the opspam fake-review detector. The detection rules themselves
//! live in `opspam-core`.

pub mod commands;
pub mod config;
pub mod ingest;
pub mod lexicons;
pub mod output;

pub use commands::{cmd_detect, cmd_eval, cmd_reviewers, cmd_sentiment, CliError, RunManifest};
pub use ingest::{parse_amazon_tsv, parse_labeled_tsv, InputFormat, ParseMode, ParseReport};
