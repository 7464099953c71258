//! Ground-truth evaluation: confusion matrix, derived metrics and the
//! Pearson chi-squared contingency test.
//!
//! The chi-squared p-value is computed, not table-looked-up, from the
//! regularized incomplete gamma function (series expansion for small
//! arguments, Lentz continued fraction otherwise). No continuity
//! correction is applied to the statistic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::classifier::Verdict;
use crate::math;
use crate::record::{GroundLabel, ReviewRecord};

/// Evaluation failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// Empty verdict list or empty matrix: nothing to evaluate.
    NothingToEvaluate,
    /// A verdict references a review id absent from the record list.
    UnknownReview(String),
    /// A verdict's record carries no ground-truth label.
    MissingGroundLabel(String),
    /// Malformed contingency table (wrong shape or negative count).
    InvalidTable(String),
    /// A row or column of the table sums to zero.
    DegenerateTable(String),
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::NothingToEvaluate => f.write_str("nothing to evaluate"),
            EvalError::UnknownReview(id) => {
                write!(f, "verdict references unknown review \"{id}\"")
            }
            EvalError::MissingGroundLabel(id) => {
                write!(f, "review \"{id}\" has no ground-truth label")
            }
            EvalError::InvalidTable(reason) => write!(f, "invalid contingency table: {reason}"),
            EvalError::DegenerateTable(reason) => {
                write!(f, "degenerate contingency table: {reason}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Two-class confusion counts. "Positive" is the fake class: `tp` counts
/// reviews that are labeled fake and predicted fake (the `+/+` cell), `fn_`
/// labeled fake but predicted genuine (`+/-`), `fp` labeled genuine but
/// predicted fake (`-/+`), `tn` labeled genuine and predicted genuine
/// (`-/-`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fn_: u64,
    pub fp: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    /// Number of evaluated records.
    pub fn total(&self) -> u64 {
        self.tp + self.fn_ + self.fp + self.tn
    }

    /// The four cells in `+/+`, `+/-`, `-/+`, `-/-` order.
    pub fn cells(&self) -> [u64; 4] {
        [self.tp, self.fn_, self.fp, self.tn]
    }
}

/// Tally verdicts against ground labels. Every verdict must resolve to a
/// labeled record; an empty verdict list is an error.
pub fn confusion_matrix(
    verdicts: &[Verdict],
    records: &[ReviewRecord],
) -> Result<ConfusionMatrix, EvalError> {
    if verdicts.is_empty() {
        return Err(EvalError::NothingToEvaluate);
    }
    let by_id: BTreeMap<&str, &ReviewRecord> =
        records.iter().map(|r| (r.review_id.as_str(), r)).collect();
    let mut matrix = ConfusionMatrix::default();
    for verdict in verdicts {
        let record = by_id
            .get(verdict.review_id.as_str())
            .ok_or_else(|| EvalError::UnknownReview(verdict.review_id.clone()))?;
        let label = record
            .ground_label
            .ok_or_else(|| EvalError::MissingGroundLabel(verdict.review_id.clone()))?;
        match (label, verdict.is_fake) {
            (GroundLabel::Fake, true) => matrix.tp += 1,
            (GroundLabel::Fake, false) => matrix.fn_ += 1,
            (GroundLabel::Genuine, true) => matrix.fp += 1,
            (GroundLabel::Genuine, false) => matrix.tn += 1,
        }
    }
    Ok(matrix)
}

/// Outcome of a Pearson chi-squared test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub significant_at_005: bool,
}

/// Pearson chi-squared test over an `r x c` table of non-negative counts
/// (fractional counts are fine, e.g. an expected-frequency baseline).
///
/// Requires at least a 2x2 table with no all-zero row or column.
pub fn chi_square_contingency(table: &[Vec<f64>]) -> Result<ChiSquareResult, EvalError> {
    let rows = table.len();
    if rows < 2 {
        return Err(EvalError::InvalidTable(format!(
            "need at least 2 rows, got {rows}"
        )));
    }
    let cols = table[0].len();
    if cols < 2 {
        return Err(EvalError::InvalidTable(format!(
            "need at least 2 columns, got {cols}"
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(EvalError::InvalidTable(format!(
                "row {i} has {} columns, expected {cols}",
                row.len()
            )));
        }
        for (j, &cell) in row.iter().enumerate() {
            if !cell.is_finite() || cell < 0.0 {
                return Err(EvalError::InvalidTable(format!(
                    "cell ({i},{j}) is {cell}; counts must be finite and non-negative"
                )));
            }
        }
    }

    let row_sums: Vec<f64> = table.iter().map(|row| row.iter().sum()).collect();
    let col_sums: Vec<f64> = (0..cols)
        .map(|j| table.iter().map(|row| row[j]).sum())
        .collect();
    let total: f64 = row_sums.iter().sum();
    if let Some(i) = row_sums.iter().position(|&s| s == 0.0) {
        return Err(EvalError::DegenerateTable(format!("row {i} sums to zero")));
    }
    if let Some(j) = col_sums.iter().position(|&s| s == 0.0) {
        return Err(EvalError::DegenerateTable(format!(
            "column {j} sums to zero"
        )));
    }

    let mut statistic = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &observed) in row.iter().enumerate() {
            let expected = row_sums[i] * col_sums[j] / total;
            let diff = observed - expected;
            statistic += diff * diff / expected;
        }
    }

    let degrees_of_freedom = (rows - 1) * (cols - 1);
    let p_value = chi_square_pvalue(statistic, degrees_of_freedom);
    Ok(ChiSquareResult {
        statistic,
        degrees_of_freedom,
        p_value,
        significant_at_005: p_value < 0.05,
    })
}

/// Upper-tail probability of the chi-squared distribution with `df` degrees
/// of freedom: `P(X > statistic)`.
pub fn chi_square_pvalue(statistic: f64, df: usize) -> f64 {
    debug_assert!(df > 0, "degrees of freedom must be positive");
    if statistic <= 0.0 {
        return 1.0;
    }
    let p = upper_incomplete_gamma_regularized(df as f64 / 2.0, statistic / 2.0);
    p.clamp(0.0, 1.0)
}

const GAMMA_EPS: f64 = 1e-15;
const GAMMA_MAX_ITER: usize = 500;

/// ln(Gamma(x)) for x > 0, Lanczos approximation.
fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 6] = [
        76.180_091_729_471_46,
        -86.505_320_329_416_77,
        24.014_098_240_830_91,
        -1.231_739_572_450_155,
        0.120_865_097_386_617_9e-2,
        -0.539_523_938_495_3e-5,
    ];
    let mut series = 1.000_000_000_190_015;
    for (i, &coeff) in COEFFS.iter().enumerate() {
        series += coeff / (x + i as f64 + 1.0);
    }
    let tmp = x + 5.5;
    let tmp = (x + 0.5) * math::ln(tmp) - tmp;
    tmp + math::ln(2.506_628_274_631_000_5 * series / x)
}

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
fn upper_incomplete_gamma_regularized(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - lower_gamma_series(a, x)
    } else {
        upper_gamma_continued_fraction(a, x)
    }
}

/// Series expansion of the regularized lower incomplete gamma P(a, x);
/// converges quickly for x < a + 1.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut denominator = a;
    let mut sum = 1.0 / a;
    let mut term = sum;
    for _ in 0..GAMMA_MAX_ITER {
        denominator += 1.0;
        term *= x / denominator;
        sum += term;
        if math::abs(term) < math::abs(sum) * GAMMA_EPS {
            break;
        }
    }
    sum * math::exp(-x + a * math::ln(x) - ln_gamma(a))
}

/// Lentz continued fraction for the regularized upper incomplete gamma
/// Q(a, x); converges quickly for x >= a + 1.
fn upper_gamma_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if math::abs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if math::abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if math::abs(delta - 1.0) < GAMMA_EPS {
            break;
        }
    }
    math::exp(-x + a * math::ln(x) - ln_gamma(a)) * h
}

/// Accuracy, precision, recall and F1 for the fake class. A 0/0 ratio is
/// `None` (undefined), never 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision_fake: Option<f64>,
    pub recall_fake: Option<f64>,
    pub f1_fake: Option<f64>,
}

/// Derive metrics from a non-empty confusion matrix.
pub fn metrics(matrix: &ConfusionMatrix) -> Result<MetricsReport, EvalError> {
    let total = matrix.total();
    if total == 0 {
        return Err(EvalError::NothingToEvaluate);
    }
    let ratio = |num: u64, denom: u64| {
        if denom == 0 {
            None
        } else {
            Some(num as f64 / denom as f64)
        }
    };
    let accuracy = (matrix.tp + matrix.tn) as f64 / total as f64;
    let precision_fake = ratio(matrix.tp, matrix.tp + matrix.fp);
    let recall_fake = ratio(matrix.tp, matrix.tp + matrix.fn_);
    let f1_fake = match (precision_fake, recall_fake) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };
    Ok(MetricsReport {
        accuracy,
        precision_fake,
        recall_fake,
        f1_fake,
    })
}
