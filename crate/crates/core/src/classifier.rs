//! Corpus-level classification: the duplicate-text rule, combination of
//! per-rule verdicts into one decision, and reviewer aggregation.
//!
//! Classification is two-phase: first a [`DuplicateIndex`] is built over the
//! whole corpus (single writer), then every record is evaluated against the
//! immutable index with no shared mutable state, so the per-record phase can
//! run in parallel.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::record::ReviewRecord;
use crate::rules::{
    rule_exaggeration, rule_helpful_votes, rule_length, rule_photo, rule_product_mention,
    rule_profession, rule_sentiment_divergence, sentiment, RuleConfig, RuleId, RuleVerdict, Signal,
};
use crate::textkit::{tokenize, Lexicon};

/// Contract violations in corpus-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// `rule_duplicate` was handed a record the index was not built over.
    RecordNotIndexed(String),
    /// `combine` received two verdicts for the same rule.
    DuplicateRuleVerdict(RuleId),
}

impl core::fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ClassifyError::RecordNotIndexed(id) => {
                write!(f, "review \"{id}\" is not in the duplicate index")
            }
            ClassifyError::DuplicateRuleVerdict(rule) => {
                write!(f, "more than one verdict for rule {rule}")
            }
        }
    }
}

impl core::error::Error for ClassifyError {}

/// Groups reviews by normalized body text.
///
/// The fingerprint is the body's normalized tokens joined by single spaces,
/// so `"Great!!"` and `"great"` land in the same group. Bodies that
/// normalize to nothing share the empty fingerprint but are never flagged.
#[derive(Debug, Clone, Default)]
pub struct DuplicateIndex {
    groups: BTreeMap<String, Vec<String>>,
    fingerprint_by_id: BTreeMap<String, String>,
}

impl DuplicateIndex {
    /// The normalized-body fingerprint used for grouping.
    pub fn fingerprint(body: &str) -> String {
        tokenize(body).join(" ")
    }

    /// The review ids sharing `fingerprint`, in insertion order.
    pub fn group(&self, fingerprint: &str) -> &[String] {
        self.groups.get(fingerprint).map_or(&[], Vec::as_slice)
    }

    /// Number of distinct fingerprints.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Group `records` by normalized-body fingerprint. Expects unique review
/// ids (the parsers enforce that).
pub fn build_duplicate_index(records: &[ReviewRecord]) -> DuplicateIndex {
    let mut index = DuplicateIndex::default();
    for record in records {
        let fingerprint = DuplicateIndex::fingerprint(&record.review_body);
        index
            .groups
            .entry(fingerprint.clone())
            .or_default()
            .push(record.review_id.clone());
        index
            .fingerprint_by_id
            .insert(record.review_id.clone(), fingerprint);
    }
    index
}

/// Fake when the record's normalized body is shared with at least one other
/// review — both members of an equal pair are flagged. Empty bodies are
/// exempt (two blank reviews being "identical" is vacuous; the length rule
/// flags them anyway).
pub fn rule_duplicate(
    record: &ReviewRecord,
    index: &DuplicateIndex,
) -> Result<RuleVerdict, ClassifyError> {
    let fingerprint = index
        .fingerprint_by_id
        .get(&record.review_id)
        .ok_or_else(|| ClassifyError::RecordNotIndexed(record.review_id.clone()))?;
    if fingerprint.is_empty() {
        return Ok(RuleVerdict {
            rule: RuleId::Duplicate,
            signal: Signal::Genuine,
            detail: String::from("empty body is never duplicate-flagged"),
        });
    }
    let sharers = index.group(fingerprint).len();
    if sharers >= 2 {
        Ok(RuleVerdict {
            rule: RuleId::Duplicate,
            signal: Signal::Fake,
            detail: format!("body text shared with {} other review(s)", sharers - 1),
        })
    } else {
        Ok(RuleVerdict {
            rule: RuleId::Duplicate,
            signal: Signal::Genuine,
            detail: String::from("body text unique in corpus"),
        })
    }
}

/// How per-rule verdicts are folded into one decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineMode {
    /// Majority vote among non-abstaining rules; ties and all-abstain
    /// resolve to genuine.
    #[default]
    Vote,
    /// Conjunction of the four-term product formula: duplicate AND
    /// exaggeration must signal fake, while the helpful-votes and length
    /// terms must not signal genuine (abstaining there is non-exculpatory).
    PaperAnd,
}

impl CombineMode {
    pub fn name(self) -> &'static str {
        match self {
            CombineMode::Vote => "vote",
            CombineMode::PaperAnd => "paper-and",
        }
    }
}

/// Combined decision for one review.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub review_id: String,
    pub is_fake: bool,
    /// Rules that signaled fake, in evaluation order.
    pub fake_rules: Vec<RuleId>,
    /// Rules that signaled genuine, in evaluation order.
    pub genuine_rules: Vec<RuleId>,
    /// Fraction of non-abstaining rules that signaled fake; 0 when every
    /// rule abstained.
    pub score: f64,
}

/// Fold at most one verdict per rule into a [`Verdict`] for `review_id`.
pub fn combine(
    review_id: impl Into<String>,
    verdicts: &[RuleVerdict],
    mode: CombineMode,
) -> Result<Verdict, ClassifyError> {
    let mut seen: Vec<RuleId> = Vec::new();
    let mut fake_rules = Vec::new();
    let mut genuine_rules = Vec::new();
    for verdict in verdicts {
        if seen.contains(&verdict.rule) {
            return Err(ClassifyError::DuplicateRuleVerdict(verdict.rule));
        }
        seen.push(verdict.rule);
        match verdict.signal {
            Signal::Fake => fake_rules.push(verdict.rule),
            Signal::Genuine => genuine_rules.push(verdict.rule),
            Signal::Abstain => {}
        }
    }

    let signal_of = |rule: RuleId| verdicts.iter().find(|v| v.rule == rule).map(|v| v.signal);

    let is_fake = match mode {
        CombineMode::Vote => fake_rules.len() > genuine_rules.len(),
        CombineMode::PaperAnd => {
            signal_of(RuleId::Duplicate) == Some(Signal::Fake)
                && signal_of(RuleId::Exaggeration) == Some(Signal::Fake)
                && signal_of(RuleId::HelpfulVotes) != Some(Signal::Genuine)
                && signal_of(RuleId::Length) != Some(Signal::Genuine)
        }
    };

    let decided = fake_rules.len() + genuine_rules.len();
    let score = if decided == 0 {
        0.0
    } else {
        fake_rules.len() as f64 / decided as f64
    };

    Ok(Verdict {
        review_id: review_id.into(),
        is_fake,
        fake_rules,
        genuine_rules,
        score,
    })
}

/// All the word lists the rules need.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    pub exaggeration_positive: Lexicon,
    pub exaggeration_negative: Lexicon,
    pub degrees: Lexicon,
    pub honorifics: Lexicon,
    pub sentiment_positive: Lexicon,
    pub sentiment_negative: Lexicon,
    pub stopwords: Lexicon,
}

/// Evaluate every rule for one record against a prebuilt index.
pub fn evaluate_rules(
    record: &ReviewRecord,
    index: &DuplicateIndex,
    lexicons: &LexiconSet,
    config: &RuleConfig,
) -> Result<Vec<RuleVerdict>, ClassifyError> {
    let summary = sentiment(
        record,
        &lexicons.sentiment_positive,
        &lexicons.sentiment_negative,
    );
    Ok(alloc::vec![
        rule_exaggeration(
            record,
            &lexicons.exaggeration_positive,
            &lexicons.exaggeration_negative,
        ),
        rule_profession(record, &lexicons.degrees, &lexicons.honorifics),
        rule_length(record, config),
        rule_helpful_votes(record, config),
        rule_product_mention(record, config, &lexicons.stopwords),
        rule_photo(record),
        rule_duplicate(record, index)?,
        rule_sentiment_divergence(record, &summary, config),
    ])
}

/// Classify a whole corpus: build the duplicate index once, evaluate all
/// eight rules per record, combine per `mode`. Output order matches input
/// order.
pub fn classify_corpus(
    records: &[ReviewRecord],
    lexicons: &LexiconSet,
    config: &RuleConfig,
    mode: CombineMode,
) -> Result<Vec<Verdict>, ClassifyError> {
    let index = build_duplicate_index(records);
    records
        .iter()
        .map(|record| {
            let verdicts = evaluate_rules(record, &index, lexicons, config)?;
            combine(record.review_id.as_str(), &verdicts, mode)
        })
        .collect()
}

/// Helpful-vote aggregate for one reviewer.
#[derive(Debug, Clone, PartialEq)]
pub struct ReviewerStats {
    pub customer_id: String,
    pub review_count: u32,
    pub total_helpful: u64,
    /// `total_helpful / review_count`; low values mark likely spammers.
    pub helpful_ratio: f64,
}

/// Aggregate helpful votes per reviewer. Records without a customer id or
/// without a vote count are left out entirely. Output is ordered by
/// customer id.
pub fn reviewer_stats(records: &[ReviewRecord]) -> Vec<ReviewerStats> {
    let mut grouped: BTreeMap<&str, (u32, u64)> = BTreeMap::new();
    for record in records {
        let (Some(customer_id), Some(helpful)) = (&record.customer_id, record.helpful_votes) else {
            continue;
        };
        let entry = grouped.entry(customer_id).or_insert((0, 0));
        entry.0 += 1;
        entry.1 += u64::from(helpful);
    }
    grouped
        .into_iter()
        .map(
            |(customer_id, (review_count, total_helpful))| ReviewerStats {
                customer_id: customer_id.to_string(),
                review_count,
                total_helpful,
                helpful_ratio: total_helpful as f64 / f64::from(review_count),
            },
        )
        .collect()
}
