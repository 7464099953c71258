//! The per-review heuristics and the lexicon-ratio sentiment engine.
//!
//! Every rule returns a tri-state [`RuleVerdict`]: `Fake` when it found
//! evidence the review is fake, `Genuine` when it found evidence it is not,
//! and `Abstain` when its input is unavailable or non-discriminative. The
//! duplicate rule needs corpus-wide state and lives in [`crate::classifier`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::record::ReviewRecord;
use crate::textkit::{text_stats, tokenize, Lexicon};

/// Identifies which heuristic produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Exaggeration,
    Profession,
    Length,
    HelpfulVotes,
    ProductMention,
    Photo,
    Duplicate,
    SentimentDivergence,
}

impl RuleId {
    /// Stable lowercase name used in TSV and JSON output.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Exaggeration => "exaggeration",
            RuleId::Profession => "profession",
            RuleId::Length => "length",
            RuleId::HelpfulVotes => "helpful_votes",
            RuleId::ProductMention => "product_mention",
            RuleId::Photo => "photo",
            RuleId::Duplicate => "duplicate",
            RuleId::SentimentDivergence => "sentiment_divergence",
        }
    }

    /// All rules, in evaluation order.
    pub const ALL: [RuleId; 8] = [
        RuleId::Exaggeration,
        RuleId::Profession,
        RuleId::Length,
        RuleId::HelpfulVotes,
        RuleId::ProductMention,
        RuleId::Photo,
        RuleId::Duplicate,
        RuleId::SentimentDivergence,
    ];
}

impl core::fmt::Display for RuleId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Tri-state rule outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    Fake,
    Genuine,
    Abstain,
}

/// One heuristic's verdict on one review, with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: RuleId,
    pub signal: Signal,
    pub detail: String,
}

impl RuleVerdict {
    fn fake(rule: RuleId, detail: String) -> Self {
        RuleVerdict {
            rule,
            signal: Signal::Fake,
            detail,
        }
    }

    fn genuine(rule: RuleId, detail: String) -> Self {
        RuleVerdict {
            rule,
            signal: Signal::Genuine,
            detail,
        }
    }

    fn abstain(rule: RuleId, detail: String) -> Self {
        RuleVerdict {
            rule,
            signal: Signal::Abstain,
            detail,
        }
    }
}

/// Thresholds for the rules that need one. All must be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    /// A body must have more than this many words to look genuine.
    pub min_words: usize,
    /// A body must have more than this many characters to look genuine.
    pub min_chars: usize,
    /// Helpful-vote count at or above this counts as genuine evidence.
    pub helpful_votes_threshold: u32,
    /// Gap between predicted and actual star rating that counts as fake.
    pub divergence_threshold: u32,
    /// Product-title tokens shorter than this are ignored for mentions.
    pub mention_min_token_len: usize,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            min_words: 10,
            min_chars: 50,
            helpful_votes_threshold: 10,
            divergence_threshold: 2,
            mention_min_token_len: 3,
        }
    }
}

/// Sentiment bucket derived from the positive/negative word-count ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentimentCategory {
    ExtremelyNegative,
    Negative,
    Neutral,
    Positive,
    ExtremelyPositive,
    /// Ratio of exactly 0.8 or 1.25, which the branch sequence leaves
    /// unclassified. Maps to predicted rating 0.
    Indeterminate,
}

impl SentimentCategory {
    /// The star rating this category predicts; 0 for [`Indeterminate`].
    ///
    /// [`Indeterminate`]: SentimentCategory::Indeterminate
    pub fn predicted_rating(self) -> u8 {
        match self {
            SentimentCategory::ExtremelyPositive => 5,
            SentimentCategory::Positive => 4,
            SentimentCategory::Neutral => 3,
            SentimentCategory::Negative => 2,
            SentimentCategory::ExtremelyNegative => 1,
            SentimentCategory::Indeterminate => 0,
        }
    }

    /// Lowercase label used in report output.
    pub fn label(self) -> &'static str {
        match self {
            SentimentCategory::ExtremelyNegative => "extremely negative",
            SentimentCategory::Negative => "negative",
            SentimentCategory::Neutral => "neutral",
            SentimentCategory::Positive => "positive",
            SentimentCategory::ExtremelyPositive => "extremely positive",
            SentimentCategory::Indeterminate => "indeterminate",
        }
    }
}

impl core::fmt::Display for SentimentCategory {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Lexicon hit counts and the category/rating they map to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentimentSummary {
    pub positive_count: usize,
    pub negative_count: usize,
    pub category: SentimentCategory,
    /// 1..=5, or 0 when the category is indeterminate.
    pub predicted_rating: u8,
}

/// Classify a positive/negative hit-count pair.
///
/// The branch order matters and is kept exactly as-is: zero-count cases
/// first, then the near-1 band, then the extreme ratios, then the moderate
/// ones. Ratios of exactly 0.8 or 1.25 satisfy no branch and come out
/// [`SentimentCategory::Indeterminate`].
pub fn sentiment_category(positive_count: usize, negative_count: usize) -> SentimentCategory {
    if positive_count == 0 && negative_count == 0 {
        return SentimentCategory::Neutral;
    }
    if positive_count == 0 {
        return SentimentCategory::ExtremelyNegative;
    }
    if negative_count == 0 {
        return SentimentCategory::ExtremelyPositive;
    }
    let percent = positive_count as f64 / negative_count as f64;
    if 0.8 < percent && percent < 1.25 {
        SentimentCategory::Neutral
    } else if percent > 2.0 {
        SentimentCategory::ExtremelyPositive
    } else if percent < 0.5 {
        SentimentCategory::ExtremelyNegative
    } else if percent > 1.25 {
        SentimentCategory::Positive
    } else if percent < 0.8 {
        SentimentCategory::Negative
    } else {
        SentimentCategory::Indeterminate
    }
}

/// Count sentiment-lexicon hits in the review body (with multiplicity) and
/// derive the category and predicted star rating.
pub fn sentiment(
    record: &ReviewRecord,
    pos_words: &Lexicon,
    neg_words: &Lexicon,
) -> SentimentSummary {
    let tokens = tokenize(&record.review_body);
    let positive_count = tokens.iter().filter(|t| pos_words.contains(t)).count();
    let negative_count = tokens.iter().filter(|t| neg_words.contains(t)).count();
    let category = sentiment_category(positive_count, negative_count);
    SentimentSummary {
        positive_count,
        negative_count,
        category,
        predicted_rating: category.predicted_rating(),
    }
}

fn body_and_headline_tokens(record: &ReviewRecord) -> Vec<String> {
    let mut tokens = tokenize(&record.review_body);
    tokens.extend(tokenize(&record.review_headline));
    tokens
}

/// Fake when body or headline contains an over-the-top word from either
/// exaggeration bin; genuine otherwise.
pub fn rule_exaggeration(
    record: &ReviewRecord,
    pos_bin: &Lexicon,
    neg_bin: &Lexicon,
) -> RuleVerdict {
    let hit = body_and_headline_tokens(record)
        .into_iter()
        .find(|t| pos_bin.contains(t) || neg_bin.contains(t));
    match hit {
        Some(word) => RuleVerdict::fake(
            RuleId::Exaggeration,
            format!("exaggerated word \"{word}\" present"),
        ),
        None => RuleVerdict::genuine(
            RuleId::Exaggeration,
            String::from("no exaggerated word present"),
        ),
    }
}

/// Fake when body or headline name a degree or honorific; genuine otherwise.
pub fn rule_profession(
    record: &ReviewRecord,
    degrees: &Lexicon,
    honorifics: &Lexicon,
) -> RuleVerdict {
    let hit = body_and_headline_tokens(record)
        .into_iter()
        .find(|t| degrees.contains(t) || honorifics.contains(t));
    match hit {
        Some(word) => RuleVerdict::fake(
            RuleId::Profession,
            format!("profession word \"{word}\" present"),
        ),
        None => RuleVerdict::genuine(
            RuleId::Profession,
            String::from("no profession word present"),
        ),
    }
}

/// Genuine only when the body clears both length thresholds, strictly.
/// The headline does not count toward length.
pub fn rule_length(record: &ReviewRecord, config: &RuleConfig) -> RuleVerdict {
    let stats = text_stats(&record.review_body);
    let detail = format!(
        "{} words, {} chars (need more than {} and {})",
        stats.word_count, stats.char_count, config.min_words, config.min_chars
    );
    if stats.word_count > config.min_words && stats.char_count > config.min_chars {
        RuleVerdict::genuine(RuleId::Length, detail)
    } else {
        RuleVerdict::fake(RuleId::Length, detail)
    }
}

/// Genuine when the review collected at least the threshold of helpful
/// votes. A low count is not evidence of anything (most legitimate reviews
/// get few votes), and the labeled dataset has no vote counts at all, so
/// both cases abstain.
pub fn rule_helpful_votes(record: &ReviewRecord, config: &RuleConfig) -> RuleVerdict {
    match record.helpful_votes {
        None => RuleVerdict::abstain(
            RuleId::HelpfulVotes,
            String::from("helpful-vote count not available"),
        ),
        Some(votes) if votes >= config.helpful_votes_threshold => RuleVerdict::genuine(
            RuleId::HelpfulVotes,
            format!(
                "{votes} helpful votes (threshold {})",
                config.helpful_votes_threshold
            ),
        ),
        Some(votes) => RuleVerdict::abstain(
            RuleId::HelpfulVotes,
            format!("only {votes} helpful votes; no evidence either way"),
        ),
    }
}

/// Genuine when the body mentions a significant word from the product title
/// or category; fake when it mentions none. Stopwords and tokens shorter
/// than the configured minimum don't count as significant; if nothing in
/// the title or category survives that filter, the rule abstains.
pub fn rule_product_mention(
    record: &ReviewRecord,
    config: &RuleConfig,
    stopwords: &Lexicon,
) -> RuleVerdict {
    let mut title_tokens = tokenize(&record.product_title);
    title_tokens.extend(tokenize(&record.product_category));
    title_tokens.retain(|t| t.chars().count() >= config.mention_min_token_len);
    title_tokens.retain(|t| !stopwords.contains(t));

    if title_tokens.is_empty() {
        return RuleVerdict::abstain(
            RuleId::ProductMention,
            String::from("product title and category yield no usable words"),
        );
    }

    let hit = tokenize(&record.review_body)
        .into_iter()
        .find(|t| title_tokens.iter().any(|title| title == t));
    match hit {
        Some(word) => RuleVerdict::genuine(
            RuleId::ProductMention,
            format!("body mentions product word \"{word}\""),
        ),
        None => RuleVerdict::fake(
            RuleId::ProductMention,
            String::from("body mentions no product-title or category word"),
        ),
    }
}

/// Genuine when the review is known to carry product photos. Neither
/// dataset format records photos, and most genuine reviews lack them
/// anyway, so `false` and absent both abstain.
pub fn rule_photo(record: &ReviewRecord) -> RuleVerdict {
    match record.has_images {
        Some(true) => RuleVerdict::genuine(
            RuleId::Photo,
            String::from("review includes product photos"),
        ),
        Some(false) => RuleVerdict::abstain(
            RuleId::Photo,
            String::from("review has no photos; not evidence either way"),
        ),
        None => RuleVerdict::abstain(RuleId::Photo, String::from("no photo information")),
    }
}

/// Fake when the sentiment-predicted rating is far from the actual star
/// rating. Abstains on an indeterminate sentiment rather than comparing
/// stars against the placeholder rating 0.
pub fn rule_sentiment_divergence(
    record: &ReviewRecord,
    summary: &SentimentSummary,
    config: &RuleConfig,
) -> RuleVerdict {
    if summary.category == SentimentCategory::Indeterminate {
        return RuleVerdict::abstain(
            RuleId::SentimentDivergence,
            String::from("sentiment ratio indeterminate"),
        );
    }
    let gap = (summary.predicted_rating as i32 - record.star_rating as i32).unsigned_abs();
    let detail = format!(
        "predicted rating {} vs star rating {}",
        summary.predicted_rating, record.star_rating
    );
    if gap >= config.divergence_threshold {
        RuleVerdict::fake(RuleId::SentimentDivergence, detail)
    } else {
        RuleVerdict::genuine(RuleId::SentimentDivergence, detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::ReviewRecord;

    fn exaggeration_bins() -> (Lexicon, Lexicon) {
        (
            Lexicon::from_words(
                "exaggeration-positive",
                [
                    "Exceptional",
                    "Outstanding",
                    "Astonishing",
                    "Amazing",
                    "Phenomenal",
                ],
            ),
            Lexicon::from_words(
                "exaggeration-negative",
                ["Worst", "Terrible", "Appalling", "Disastrous"],
            ),
        )
    }

    fn profession_bins() -> (Lexicon, Lexicon) {
        (
            Lexicon::from_words("degrees", ["Ph.D.", "M.D.", "D.D.S.", "Masters"]),
            Lexicon::from_words(
                "honorifics",
                [
                    "Dr.",
                    "Mr.",
                    "Mrs.",
                    "Captain",
                    "Coach",
                    "Professor",
                    "Reverend",
                ],
            ),
        )
    }

    fn record_with_body(body: &str) -> ReviewRecord {
        ReviewRecord::new("r1", "Widget", "Toys", 3, body)
    }

    /// `n` words of `len` letters each, space separated.
    fn make_words(n: usize, len: usize) -> String {
        alloc::vec!["a".repeat(len); n].join(" ")
    }

    #[test]
    fn exaggeration_fires_on_body() {
        let (pos, neg) = exaggeration_bins();
        let record = record_with_body("This pillow is phenomenal");
        let verdict = rule_exaggeration(&record, &pos, &neg);
        assert_eq!(verdict.signal, Signal::Fake);
        assert!(verdict.detail.contains("phenomenal"));
    }

    #[test]
    fn exaggeration_fires_on_headline() {
        let (pos, neg) = exaggeration_bins();
        let mut record = record_with_body("it broke after a week");
        record.review_headline = String::from("Worst");
        assert_eq!(rule_exaggeration(&record, &pos, &neg).signal, Signal::Fake);
    }

    #[test]
    fn exaggeration_passes_bland_text() {
        let (pos, neg) = exaggeration_bins();
        let record = record_with_body("It works and does everything I need");
        assert_eq!(
            rule_exaggeration(&record, &pos, &neg).signal,
            Signal::Genuine
        );
    }

    #[test]
    fn profession_fires_on_degree() {
        let (degrees, honorifics) = profession_bins();
        let record = record_with_body("As a Ph.D. I can confirm this works");
        assert_eq!(
            rule_profession(&record, &degrees, &honorifics).signal,
            Signal::Fake
        );
    }

    #[test]
    fn profession_fires_on_honorific() {
        let (degrees, honorifics) = profession_bins();
        let mut record = record_with_body("it does the job");
        record.review_headline = String::from("Professor recommended!");
        assert_eq!(
            rule_profession(&record, &degrees, &honorifics).signal,
            Signal::Fake
        );
    }

    #[test]
    fn profession_passes_plain_text() {
        let (degrees, honorifics) = profession_bins();
        let record = record_with_body("my daughter loved it");
        assert_eq!(
            rule_profession(&record, &degrees, &honorifics).signal,
            Signal::Genuine
        );
    }

    #[test]
    fn length_flags_short_review() {
        let config = RuleConfig::default();
        assert_eq!(
            rule_length(&record_with_body("Ok"), &config).signal,
            Signal::Fake
        );
    }

    #[test]
    fn length_boundary_is_strict() {
        let config = RuleConfig::default();
        // 10 words x 5 chars + one extra char on the first word = 60 chars.
        let body = format!("{}a {}", make_words(1, 5), make_words(9, 5));
        assert_eq!(text_stats(&body).word_count, 10);
        assert_eq!(text_stats(&body).char_count, 60);
        assert_eq!(
            rule_length(&record_with_body(&body), &config).signal,
            Signal::Fake
        );

        // 11 words, 51 chars: both one past the threshold.
        let body = format!("a {}", make_words(10, 4));
        assert_eq!(text_stats(&body).word_count, 11);
        assert_eq!(text_stats(&body).char_count, 51);
        assert_eq!(
            rule_length(&record_with_body(&body), &config).signal,
            Signal::Genuine
        );
    }

    #[test]
    fn length_passes_long_review() {
        let config = RuleConfig::default();
        let body = make_words(40, 6);
        assert_eq!(
            rule_length(&record_with_body(&body), &config).signal,
            Signal::Genuine
        );
    }

    #[test]
    fn helpful_votes_above_threshold_is_genuine() {
        let config = RuleConfig::default();
        let mut record = record_with_body("fine");
        record.helpful_votes = Some(664);
        assert_eq!(rule_helpful_votes(&record, &config).signal, Signal::Genuine);
    }

    #[test]
    fn helpful_votes_low_or_absent_abstains() {
        let config = RuleConfig::default();
        let mut record = record_with_body("fine");
        record.helpful_votes = Some(0);
        assert_eq!(rule_helpful_votes(&record, &config).signal, Signal::Abstain);
        record.helpful_votes = None;
        assert_eq!(rule_helpful_votes(&record, &config).signal, Signal::Abstain);
    }

    #[test]
    fn product_mention_found_in_body() {
        let config = RuleConfig::default();
        let stopwords = Lexicon::from_words("stopwords", ["the", "with", "for"]);
        let mut record =
            record_with_body("this pillow is super comfy and keeps its shape after months of use");
        record.product_title = String::from("LINENSPA Shredded Foam Pillow");
        let verdict = rule_product_mention(&record, &config, &stopwords);
        assert_eq!(verdict.signal, Signal::Genuine);
        assert!(verdict.detail.contains("pillow"));
    }

    #[test]
    fn product_mention_missing_is_fake() {
        let config = RuleConfig::default();
        let stopwords = Lexicon::from_words("stopwords", ["the", "with", "for"]);
        let mut record = record_with_body("Excellent!!!");
        record.product_title = String::from("Monopoly Junior Board Game");
        assert_eq!(
            rule_product_mention(&record, &config, &stopwords).signal,
            Signal::Fake
        );
    }

    #[test]
    fn product_mention_abstains_without_usable_title_words() {
        let config = RuleConfig::default();
        let stopwords = Lexicon::from_words("stopwords", ["the", "with", "for"]);
        let mut record = record_with_body("some text here");
        record.product_title = String::from("The It Is");
        record.product_category = String::from("of");
        assert_eq!(
            rule_product_mention(&record, &config, &stopwords).signal,
            Signal::Abstain
        );
    }

    #[test]
    fn photo_rule_only_trusts_known_photos() {
        let mut record = record_with_body("fine");
        record.has_images = Some(true);
        assert_eq!(rule_photo(&record).signal, Signal::Genuine);
        record.has_images = Some(false);
        assert_eq!(rule_photo(&record).signal, Signal::Abstain);
        record.has_images = None;
        assert_eq!(rule_photo(&record).signal, Signal::Abstain);
    }

    #[test]
    fn sentiment_category_branches() {
        use SentimentCategory::*;
        assert_eq!(sentiment_category(0, 0), Neutral);
        assert_eq!(sentiment_category(0, 3), ExtremelyNegative);
        assert_eq!(sentiment_category(2, 0), ExtremelyPositive);
        assert_eq!(sentiment_category(3, 1), ExtremelyPositive);
        assert_eq!(sentiment_category(3, 2), Positive);
        assert_eq!(sentiment_category(1, 2), Negative);
        assert_eq!(sentiment_category(1, 1), Neutral);
        // Ratios of exactly 0.8 and 1.25 fall through every branch.
        assert_eq!(sentiment_category(4, 5), Indeterminate);
        assert_eq!(sentiment_category(5, 4), Indeterminate);
    }

    #[test]
    fn sentiment_counts_with_multiplicity() {
        let pos = Lexicon::from_words("pos", ["good", "great"]);
        let neg = Lexicon::from_words("neg", ["bad"]);
        let record = record_with_body("Good good great, not bad at all");
        let summary = sentiment(&record, &pos, &neg);
        assert_eq!(summary.positive_count, 3);
        assert_eq!(summary.negative_count, 1);
        assert_eq!(summary.category, SentimentCategory::ExtremelyPositive);
        assert_eq!(summary.predicted_rating, 5);
    }

    #[test]
    fn sentiment_no_hits_is_neutral_three() {
        let pos = Lexicon::from_words("pos", ["good"]);
        let neg = Lexicon::from_words("neg", ["bad"]);
        let summary = sentiment(&record_with_body("it arrived on time"), &pos, &neg);
        assert_eq!(summary.positive_count, 0);
        assert_eq!(summary.negative_count, 0);
        assert_eq!(summary.category, SentimentCategory::Neutral);
        assert_eq!(summary.predicted_rating, 3);
    }

    #[test]
    fn sentiment_balanced_hits_are_neutral() {
        let pos = Lexicon::from_words("pos", ["good"]);
        let neg = Lexicon::from_words("neg", ["bad"]);
        let summary = sentiment(&record_with_body("good but bad"), &pos, &neg);
        assert_eq!((summary.positive_count, summary.negative_count), (1, 1));
        assert_eq!(summary.category, SentimentCategory::Neutral);
        assert_eq!(summary.predicted_rating, 3);
    }

    #[test]
    fn divergence_flags_large_gap() {
        let config = RuleConfig::default();
        let mut record = record_with_body("ignored");
        record.star_rating = 1;
        let summary = SentimentSummary {
            positive_count: 3,
            negative_count: 0,
            category: SentimentCategory::ExtremelyPositive,
            predicted_rating: 5,
        };
        assert_eq!(
            rule_sentiment_divergence(&record, &summary, &config).signal,
            Signal::Fake
        );
    }

    #[test]
    fn divergence_allows_small_gap() {
        let config = RuleConfig::default();
        let mut record = record_with_body("ignored");
        record.star_rating = 5;
        let summary = SentimentSummary {
            positive_count: 3,
            negative_count: 2,
            category: SentimentCategory::Positive,
            predicted_rating: 4,
        };
        assert_eq!(
            rule_sentiment_divergence(&record, &summary, &config).signal,
            Signal::Genuine
        );
    }

    #[test]
    fn divergence_abstains_on_indeterminate() {
        let config = RuleConfig::default();
        let record = record_with_body("ignored");
        let summary = SentimentSummary {
            positive_count: 4,
            negative_count: 5,
            category: SentimentCategory::Indeterminate,
            predicted_rating: 0,
        };
        assert_eq!(
            rule_sentiment_divergence(&record, &summary, &config).signal,
            Signal::Abstain
        );
    }

    #[test]
    fn decided_verdicts_carry_a_reason() {
        let (pos, neg) = exaggeration_bins();
        let config = RuleConfig::default();
        let record = record_with_body("phenomenal");
        for verdict in [
            rule_exaggeration(&record, &pos, &neg),
            rule_length(&record, &config),
        ] {
            assert_ne!(verdict.signal, Signal::Abstain);
            assert!(!verdict.detail.is_empty());
        }
    }
}
