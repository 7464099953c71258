//! Rendering of verdicts, sentiment lines, reviewer tables and evaluation
//! reports. All output here is deterministic: same inputs, same bytes.

use opspam_core::classifier::{ReviewerStats, Verdict};
use opspam_core::eval::{ChiSquareResult, ConfusionMatrix, MetricsReport};
use opspam_core::record::ReviewRecord;
use opspam_core::rules::SentimentSummary;
use serde_json::json;

fn joined_rules(rules: &[opspam_core::rules::RuleId]) -> String {
    rules.iter().map(|r| r.name()).collect::<Vec<_>>().join(";")
}

/// One verdict per line: review_id, is_fake, score, fake rules, genuine
/// rules. No header.
pub fn verdicts_tsv(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        out.push_str(&format!(
            "{}\t{}\t{:.6}\t{}\t{}\n",
            v.review_id,
            v.is_fake,
            v.score,
            joined_rules(&v.fake_rules),
            joined_rules(&v.genuine_rules),
        ));
    }
    out
}

/// JSON array of verdict objects with the same fields as the TSV.
pub fn verdicts_json(verdicts: &[Verdict]) -> String {
    let array: Vec<_> = verdicts
        .iter()
        .map(|v| {
            json!({
                "review_id": v.review_id,
                "is_fake": v.is_fake,
                "score": v.score,
                "fake_rules": v.fake_rules.iter().map(|r| r.name()).collect::<Vec<_>>(),
                "genuine_rules": v.genuine_rules.iter().map(|r| r.name()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&array).expect("verdicts always serialize");
    text.push('\n');
    text
}

/// One line per review: id, hit counts, category, predicted vs actual
/// rating and their absolute difference (`NA` when indeterminate).
pub fn sentiment_tsv(rows: &[(&ReviewRecord, SentimentSummary)]) -> String {
    let mut out = String::new();
    for (record, summary) in rows {
        let difference = if summary.predicted_rating == 0 {
            "NA".to_string()
        } else {
            (i32::from(summary.predicted_rating) - i32::from(record.star_rating))
                .abs()
                .to_string()
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            record.review_id,
            summary.positive_count,
            summary.negative_count,
            summary.category,
            summary.predicted_rating,
            record.star_rating,
            difference,
        ));
    }
    out
}

/// One line per reviewer in the given order: customer_id, review_count,
/// total_helpful, helpful_ratio.
pub fn reviewers_tsv(stats: &[ReviewerStats]) -> String {
    let mut out = String::new();
    for s in stats {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.6}\n",
            s.customer_id, s.review_count, s.total_helpful, s.helpful_ratio
        ));
    }
    out
}

/// Everything `eval` produces for one run.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub matrix: ConfusionMatrix,
    pub metrics: MetricsReport,
    /// The baseline column the observed column was tested against, in
    /// `+/+`, `+/-`, `-/+`, `-/-` order.
    pub baseline: [f64; 4],
    pub chi_square: Option<ChiSquareResult>,
    /// Why the test could not run, when `chi_square` is `None`.
    pub chi_square_note: Option<String>,
}

fn fmt_count(value: f64) -> String {
    if value.fract() == 0.0 {
        format!("{}", value as u64)
    } else {
        format!("{value:.1}")
    }
}

fn fmt_metric(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.6}"),
        None => "undefined".to_string(),
    }
}

/// The confusion matrix as TSV followed by an aligned plain-text report.
pub fn eval_text(report: &EvalReport) -> String {
    let m = &report.matrix;
    let mut out = String::new();
    out.push_str("actual\\predicted\tfake\tgenuine\n");
    out.push_str(&format!("fake\t{}\t{}\n", m.tp, m.fn_));
    out.push_str(&format!("genuine\t{}\t{}\n", m.fp, m.tn));
    out.push('\n');

    let mut line = |label: &str, value: String| {
        out.push_str(&format!("{label:<22}{value}\n"));
    };
    line("n", m.total().to_string());
    line("accuracy", format!("{:.6}", report.metrics.accuracy));
    line(
        "precision (fake)",
        fmt_metric(report.metrics.precision_fake),
    );
    line("recall (fake)", fmt_metric(report.metrics.recall_fake));
    line("f1 (fake)", fmt_metric(report.metrics.f1_fake));
    line(
        "baseline",
        report
            .baseline
            .iter()
            .map(|&b| fmt_count(b))
            .collect::<Vec<_>>()
            .join(", "),
    );
    match (&report.chi_square, &report.chi_square_note) {
        (Some(chi), _) => {
            line("chi-square", format!("{:.4}", chi.statistic));
            line("degrees of freedom", chi.degrees_of_freedom.to_string());
            line("p-value", format!("{:.6e}", chi.p_value));
            line(
                "significant at 0.05",
                if chi.significant_at_005 { "yes" } else { "no" }.to_string(),
            );
        }
        (None, note) => {
            line(
                "chi-square",
                format!(
                    "not computable ({})",
                    note.as_deref().unwrap_or("unknown reason")
                ),
            );
        }
    }
    out
}

/// The same report as a JSON object.
pub fn eval_json(report: &EvalReport) -> String {
    let m = &report.matrix;
    let chi = report.chi_square.as_ref().map(|chi| {
        json!({
            "statistic": chi.statistic,
            "degrees_of_freedom": chi.degrees_of_freedom,
            "p_value": chi.p_value,
            "significant_at_005": chi.significant_at_005,
        })
    });
    let doc = json!({
        "n": m.total(),
        "matrix": { "tp": m.tp, "fn": m.fn_, "fp": m.fp, "tn": m.tn },
        "metrics": {
            "accuracy": report.metrics.accuracy,
            "precision_fake": report.metrics.precision_fake,
            "recall_fake": report.metrics.recall_fake,
            "f1_fake": report.metrics.f1_fake,
        },
        "baseline": report.baseline,
        "chi_square": chi,
        "chi_square_note": report.chi_square_note,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report always serializes");
    text.push('\n');
    text
}
