use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opspam::commands::{
    cmd_detect, cmd_eval, cmd_reviewers, cmd_sentiment, OutputFormat, RunManifest,
};
use opspam::ingest::InputFormat;
use opspam_core::classifier::CombineMode;

/// Rule-based fake-review detection over TSV review datasets.
#[derive(Parser)]
#[command(name = "opspam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify reviews; one verdict per input review
    Detect(DetectArgs),
    /// Score predictions against ground-truth labels, with a chi-squared
    /// test against a baseline predictor
    Eval(EvalArgs),
    /// Per-review sentiment counts and predicted star ratings
    Sentiment(CommonArgs),
    /// Helpful-vote aggregates per reviewer, least trusted first
    Reviewers(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input TSV dataset
    input: PathBuf,
    /// Input dataset format
    #[arg(long, value_enum, default_value_t = FormatArg::Labeled)]
    format: FormatArg,
    /// Rule-threshold file (key=value); defaults are built in
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory of lexicon files replacing the bundled ones
    #[arg(long)]
    lexicon_dir: Option<PathBuf>,
    /// Write output to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// How per-rule verdicts combine into one decision
    #[arg(long, value_enum, default_value_t = CombinerArg::Vote)]
    combiner: CombinerArg,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = OutputFormatArg::Tsv)]
    output_format: OutputFormatArg,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// How per-rule verdicts combine into one decision
    #[arg(long, value_enum, default_value_t = CombinerArg::Vote)]
    combiner: CombinerArg,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = OutputFormatArg::Tsv)]
    output_format: OutputFormatArg,
    /// Baseline column for the chi-squared test as four counts `a,b,c,d`
    /// (+/+ through -/-); default is a uniform predictor
    #[arg(long, value_parser = parse_baseline)]
    baseline: Option<Baseline>,
}

#[derive(Clone, Copy)]
struct Baseline([u64; 4]);

fn parse_baseline(raw: &str) -> Result<Baseline, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated counts, got {}",
            parts.len()
        ));
    }
    let mut cells = [0u64; 4];
    for (cell, part) in cells.iter_mut().zip(parts) {
        *cell = part
            .trim()
            .parse()
            .map_err(|_| format!("\"{part}\" is not a non-negative integer"))?;
    }
    Ok(Baseline(cells))
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Amazon,
    Labeled,
}

impl From<FormatArg> for InputFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Amazon => InputFormat::Amazon,
            FormatArg::Labeled => InputFormat::Labeled,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CombinerArg {
    Vote,
    PaperAnd,
}

impl From<CombinerArg> for CombineMode {
    fn from(value: CombinerArg) -> Self {
        match value {
            CombinerArg::Vote => CombineMode::Vote,
            CombinerArg::PaperAnd => CombineMode::PaperAnd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormatArg {
    Tsv,
    Json,
}

impl From<OutputFormatArg> for OutputFormat {
    fn from(value: OutputFormatArg) -> Self {
        match value {
            OutputFormatArg::Tsv => OutputFormat::Tsv,
            OutputFormatArg::Json => OutputFormat::Json,
        }
    }
}

fn manifest_from(
    common: &CommonArgs,
    combiner: CombineMode,
    output_format: OutputFormat,
    baseline: Option<Baseline>,
) -> RunManifest {
    RunManifest {
        input_path: common.input.clone(),
        format: common.format.into(),
        combiner_mode: combiner,
        config_path: common.config.clone(),
        lexicon_dir: common.lexicon_dir.clone(),
        output_format,
        baseline: baseline.map(|b| b.0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output_path, rendered) = match &cli.command {
        Command::Detect(args) => {
            let manifest = manifest_from(
                &args.common,
                args.combiner.into(),
                args.output_format.into(),
                None,
            );
            (args.common.output.clone(), cmd_detect(&manifest))
        }
        Command::Eval(args) => {
            let manifest = manifest_from(
                &args.common,
                args.combiner.into(),
                args.output_format.into(),
                args.baseline,
            );
            (args.common.output.clone(), cmd_eval(&manifest))
        }
        Command::Sentiment(args) => {
            let manifest = manifest_from(args, CombineMode::Vote, OutputFormat::Tsv, None);
            (args.output.clone(), cmd_sentiment(&manifest))
        }
        Command::Reviewers(args) => {
            let manifest = manifest_from(args, CombineMode::Vote, OutputFormat::Tsv, None);
            (args.output.clone(), cmd_reviewers(&manifest))
        }
    };

    match rendered {
        Ok(text) => match output_path {
            Some(path) => {
                if let Err(err) = std::fs::write(&path, text) {
                    eprintln!("opspam: cannot write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
                ExitCode::SUCCESS
            }
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(err) => {
            eprintln!("opspam: {err}");
            ExitCode::from(2)
        }
    }
}
