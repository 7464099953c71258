//! The four commands behind the CLI, written against a [`RunManifest`] so
//! tests can drive them without spawning a process.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use opspam_core::classifier::{classify_corpus, reviewer_stats, ClassifyError, CombineMode};
use opspam_core::eval::{chi_square_contingency, confusion_matrix, metrics, EvalError};
use opspam_core::record::ReviewRecord;
use opspam_core::rules::{sentiment, RuleConfig};
use thiserror::Error;

use crate::config::{load_config, ConfigError};
use crate::ingest::{parse_tsv, IngestError, InputFormat, ParseMode};
use crate::lexicons::{bundled, load_dir, LexiconError};
use crate::output::{
    eval_json, eval_text, reviewers_tsv, sentiment_tsv, verdicts_json, verdicts_tsv, EvalReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

/// Everything one run needs. Identical manifests over identical input
/// bytes produce identical output bytes.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub input_path: PathBuf,
    pub format: InputFormat,
    pub combiner_mode: CombineMode,
    pub config_path: Option<PathBuf>,
    pub lexicon_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    /// Baseline column for the chi-squared test, `+/+` through `-/-`.
    /// `None` means a uniform 50/50 predictor over the actual labels.
    pub baseline: Option<[u64; 4]>,
}

impl RunManifest {
    /// A manifest with every knob at its default.
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        RunManifest {
            input_path: input_path.into(),
            format: InputFormat::default(),
            combiner_mode: CombineMode::default(),
            config_path: None,
            lexicon_dir: None,
            output_format: OutputFormat::default(),
            baseline: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Input {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("ground truth required: eval needs labeled-format input")]
    GroundTruthRequired,
    #[error("reviewer fields absent: reviewers needs amazon-format input")]
    ReviewerFieldsAbsent,
}

struct Environment {
    lexicons: opspam_core::classifier::LexiconSet,
    config: RuleConfig,
}

fn environment(manifest: &RunManifest) -> Result<Environment, CliError> {
    let loaded = match &manifest.lexicon_dir {
        Some(dir) => load_dir(dir)?,
        None => bundled(),
    };
    for warning in &loaded.warnings {
        eprintln!("opspam: warning: {warning}");
    }
    let config = match &manifest.config_path {
        Some(path) => load_config(path)?,
        None => RuleConfig::default(),
    };
    Ok(Environment {
        lexicons: loaded.set,
        config,
    })
}

/// Parse the manifest's input file in strict mode.
fn read_records(manifest: &RunManifest) -> Result<Vec<ReviewRecord>, CliError> {
    let file = File::open(&manifest.input_path).map_err(|source| CliError::Input {
        path: manifest.input_path.display().to_string(),
        source,
    })?;
    let (records, _report) = parse_tsv(BufReader::new(file), manifest.format, ParseMode::Strict)?;
    Ok(records)
}

/// Classify every review and render the verdicts.
pub fn cmd_detect(manifest: &RunManifest) -> Result<String, CliError> {
    let env = environment(manifest)?;
    let records = read_records(manifest)?;
    let verdicts = classify_corpus(&records, &env.lexicons, &env.config, manifest.combiner_mode)?;
    Ok(match manifest.output_format {
        OutputFormat::Tsv => verdicts_tsv(&verdicts),
        OutputFormat::Json => verdicts_json(&verdicts),
    })
}

/// Classify, tally against ground labels and run the chi-squared test
/// against the baseline column.
pub fn cmd_eval(manifest: &RunManifest) -> Result<String, CliError> {
    if manifest.format != InputFormat::Labeled {
        return Err(CliError::GroundTruthRequired);
    }
    let env = environment(manifest)?;
    let records = read_records(manifest)?;
    let verdicts = classify_corpus(&records, &env.lexicons, &env.config, manifest.combiner_mode)?;
    let matrix = confusion_matrix(&verdicts, &records)?;
    let report = build_eval_report(&matrix, manifest.baseline)?;
    Ok(match manifest.output_format {
        OutputFormat::Tsv => eval_text(&report),
        OutputFormat::Json => eval_json(&report),
    })
}

/// Assemble metrics plus the chi-squared comparison of the observed cells
/// against a baseline column (uniform predictor unless overridden).
pub fn build_eval_report(
    matrix: &opspam_core::eval::ConfusionMatrix,
    baseline: Option<[u64; 4]>,
) -> Result<EvalReport, CliError> {
    let metrics_report = metrics(matrix)?;
    let baseline: [f64; 4] = match baseline {
        Some(cells) => cells.map(|c| c as f64),
        None => {
            // a coin-flip predictor splits each actual class in half
            let actual_fake = (matrix.tp + matrix.fn_) as f64;
            let actual_genuine = (matrix.fp + matrix.tn) as f64;
            [
                actual_fake / 2.0,
                actual_fake / 2.0,
                actual_genuine / 2.0,
                actual_genuine / 2.0,
            ]
        }
    };
    let observed = matrix.cells();
    let table: Vec<Vec<f64>> = baseline
        .iter()
        .zip(observed)
        .map(|(&b, o)| vec![b, o as f64])
        .collect();
    let (chi_square, chi_square_note) = match chi_square_contingency(&table) {
        Ok(result) => (Some(result), None),
        Err(EvalError::DegenerateTable(reason)) => (None, Some(reason)),
        Err(other) => return Err(other.into()),
    };
    Ok(EvalReport {
        matrix: *matrix,
        metrics: metrics_report,
        baseline,
        chi_square,
        chi_square_note,
    })
}

/// Per-review sentiment breakdown.
pub fn cmd_sentiment(manifest: &RunManifest) -> Result<String, CliError> {
    let env = environment(manifest)?;
    let records = read_records(manifest)?;
    let rows: Vec<_> = records
        .iter()
        .map(|record| {
            (
                record,
                sentiment(
                    record,
                    &env.lexicons.sentiment_positive,
                    &env.lexicons.sentiment_negative,
                ),
            )
        })
        .collect();
    Ok(sentiment_tsv(&rows))
}

/// Reviewer aggregates, least trusted (lowest helpful ratio) first.
pub fn cmd_reviewers(manifest: &RunManifest) -> Result<String, CliError> {
    if manifest.format != InputFormat::Amazon {
        return Err(CliError::ReviewerFieldsAbsent);
    }
    let records = read_records(manifest)?;
    let mut stats = reviewer_stats(&records);
    stats.sort_by(|a, b| {
        a.helpful_ratio
            .total_cmp(&b.helpful_ratio)
            .then_with(|| a.customer_id.cmp(&b.customer_id))
    });
    Ok(reviewers_tsv(&stats))
}
