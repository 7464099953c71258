//! Property tests for the invariants the modules promise.

use proptest::prelude::*;

use opspam_core::classifier::{
    build_duplicate_index, classify_corpus, combine, reviewer_stats, rule_duplicate, CombineMode,
    LexiconSet, Verdict,
};
use opspam_core::eval::{chi_square_contingency, confusion_matrix, metrics};
use opspam_core::record::{GroundLabel, ReviewRecord};
use opspam_core::rules::{
    rule_length, sentiment, sentiment_category, RuleConfig, RuleId, RuleVerdict, Signal,
};
use opspam_core::textkit::{normalize_word, tokenize, word_frequencies, Lexicon};

fn test_lexicons() -> LexiconSet {
    LexiconSet {
        exaggeration_positive: Lexicon::from_words("xp", ["phenomenal", "amazing"]),
        exaggeration_negative: Lexicon::from_words("xn", ["worst", "terrible"]),
        degrees: Lexicon::from_words("deg", ["phd", "md"]),
        honorifics: Lexicon::from_words("hon", ["dr", "professor"]),
        sentiment_positive: Lexicon::from_words("sp", ["good", "great", "love", "nice"]),
        sentiment_negative: Lexicon::from_words("sn", ["bad", "broke", "poor"]),
        stopwords: Lexicon::from_words("stop", ["the", "and", "with", "for"]),
    }
}

/// Signal profiles the rules can actually produce, in `RuleId::ALL` order:
/// exaggeration, profession, length and duplicate always decide; helpful
/// votes and photo are genuine-or-abstain; product mention and sentiment
/// divergence can go any way.
fn reachable_signals() -> impl Strategy<Value = Vec<Signal>> {
    let decides = || prop::sample::select(vec![Signal::Fake, Signal::Genuine]);
    let exculpates = || prop::sample::select(vec![Signal::Genuine, Signal::Abstain]);
    let any_signal = || prop::sample::select(vec![Signal::Fake, Signal::Genuine, Signal::Abstain]);
    (
        decides(),
        decides(),
        decides(),
        exculpates(),
        any_signal(),
        exculpates(),
        decides(),
        any_signal(),
    )
        .prop_map(|(a, b, c, d, e, f, g, h)| vec![a, b, c, d, e, f, g, h])
}

/// Bodies drawn from a small vocabulary so duplicates actually happen.
fn small_body() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "Ok", "good", "BAD!!", "way", "to", "big", "123", "pillow",
        ]),
        0..5,
    )
    .prop_map(|words| words.join(" "))
}

proptest! {
    #[test]
    fn normalize_is_idempotent(word in ".{0,40}") {
        let once = normalize_word(&word);
        prop_assert_eq!(normalize_word(&once), once);
    }

    #[test]
    fn tokens_only_contain_allowed_chars(text in ".{0,120}") {
        for token in tokenize(&text) {
            prop_assert!(!token.is_empty());
            prop_assert!(
                token.chars().all(|c| matches!(c, 'a'..='z' | '\'' | '-')),
                "bad token {:?}", token
            );
        }
    }

    #[test]
    fn frequencies_sum_to_token_count(text in ".{0,120}") {
        let tokens = tokenize(&text);
        let freqs = word_frequencies(&tokens);
        prop_assert_eq!(freqs.values().sum::<usize>(), tokens.len());
    }

    #[test]
    fn lexicon_membership_survives_renormalization(words in prop::collection::vec("[a-z]{1,8}", 1..10), query in "[A-Za-z!.]{0,10}") {
        let lexicon = Lexicon::from_words("t", words.iter().map(String::as_str));
        prop_assert_eq!(
            lexicon.contains(&query),
            lexicon.contains(&normalize_word(&query))
        );
        for word in &words {
            prop_assert!(lexicon.contains(word));
        }
    }

    #[test]
    fn rules_are_deterministic(body in ".{0,100}", star in 1u8..=5) {
        let lexicons = test_lexicons();
        let config = RuleConfig::default();
        let mut record = ReviewRecord::new("r", "Foam Pillow", "Home", star, body);
        record.helpful_votes = Some(3);
        let records = [record];
        let a = classify_corpus(&records, &lexicons, &config, CombineMode::Vote).unwrap();
        let b = classify_corpus(&records, &lexicons, &config, CombineMode::Vote).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn length_rule_monotone_in_text_growth(body in ".{0,80}", extra in "[a-z]{1,10}") {
        let config = RuleConfig::default();
        let record = ReviewRecord::new("r", "Widget", "Toys", 3, body.clone());
        if rule_length(&record, &config).signal == Signal::Genuine {
            let grown = ReviewRecord::new("r", "Widget", "Toys", 3, format!("{body} {extra}"));
            prop_assert_eq!(rule_length(&grown, &config).signal, Signal::Genuine);
        }
    }

    #[test]
    fn adding_positive_word_never_decreases_count(body in ".{0,80}") {
        let lexicons = test_lexicons();
        let base = ReviewRecord::new("r", "Widget", "Toys", 3, body.clone());
        let grown = ReviewRecord::new("r", "Widget", "Toys", 3, format!("{body} good"));
        let before = sentiment(&base, &lexicons.sentiment_positive, &lexicons.sentiment_negative);
        let after = sentiment(&grown, &lexicons.sentiment_positive, &lexicons.sentiment_negative);
        prop_assert!(after.positive_count > before.positive_count);
        prop_assert_eq!(after.negative_count, before.negative_count);
    }

    #[test]
    fn duplicate_flagging_is_symmetric(bodies in prop::collection::vec(small_body(), 1..12)) {
        let records: Vec<ReviewRecord> = bodies
            .iter()
            .enumerate()
            .map(|(i, body)| ReviewRecord::new(format!("r{i}"), "Widget", "Toys", 3, body.clone()))
            .collect();
        let index = build_duplicate_index(&records);
        for record in &records {
            let signal = rule_duplicate(record, &index).unwrap().signal;
            if signal == Signal::Fake {
                // every other member of the record's group is flagged too
                let fp = opspam_core::classifier::DuplicateIndex::fingerprint(&record.review_body);
                for other_id in index.group(&fp) {
                    let other = records.iter().find(|r| &r.review_id == other_id).unwrap();
                    prop_assert_eq!(rule_duplicate(other, &index).unwrap().signal, Signal::Fake);
                }
            }
        }
    }

    #[test]
    fn vote_flip_abstain_to_fake_never_exonerates(signals in prop::collection::vec(0u8..3, 8)) {
        let to_signal = |s: u8| match s {
            0 => Signal::Fake,
            1 => Signal::Genuine,
            _ => Signal::Abstain,
        };
        let verdicts: Vec<RuleVerdict> = RuleId::ALL
            .iter()
            .zip(&signals)
            .map(|(&rule, &s)| RuleVerdict { rule, signal: to_signal(s), detail: "t".into() })
            .collect();
        let base = combine("r", &verdicts, CombineMode::Vote).unwrap();
        for i in 0..verdicts.len() {
            if verdicts[i].signal == Signal::Abstain {
                let mut flipped = verdicts.clone();
                flipped[i].signal = Signal::Fake;
                let after = combine("r", &flipped, CombineMode::Vote).unwrap();
                if base.is_fake {
                    prop_assert!(after.is_fake);
                }
            }
        }
    }

    #[test]
    fn paper_and_fake_implies_three_fake_rules(signals in reachable_signals()) {
        let verdicts: Vec<RuleVerdict> = RuleId::ALL
            .iter()
            .zip(&signals)
            .map(|(&rule, &signal)| RuleVerdict { rule, signal, detail: "t".into() })
            .collect();
        let combined = combine("r", &verdicts, CombineMode::PaperAnd).unwrap();
        if combined.is_fake {
            prop_assert!(combined.fake_rules.len() >= 3);
        }
    }

    #[test]
    fn classification_is_permutation_stable(bodies in prop::collection::vec(small_body(), 1..10)) {
        let records: Vec<ReviewRecord> = bodies
            .iter()
            .enumerate()
            .map(|(i, body)| ReviewRecord::new(format!("r{i}"), "Foam Pillow", "Home", 3, body.clone()))
            .collect();
        let mut reversed = records.clone();
        reversed.reverse();

        let lexicons = test_lexicons();
        let config = RuleConfig::default();
        let verdict_map = |records: &[ReviewRecord]| -> std::collections::BTreeMap<String, Verdict> {
            classify_corpus(records, &lexicons, &config, CombineMode::Vote)
                .unwrap()
                .into_iter()
                .map(|v| (v.review_id.clone(), v))
                .collect()
        };
        prop_assert_eq!(verdict_map(&records), verdict_map(&reversed));
    }

    #[test]
    fn reviewer_counts_cover_exactly_qualifying_records(
        specs in prop::collection::vec((0u8..4, 0u32..20), 0..20)
    ) {
        let records: Vec<ReviewRecord> = specs
            .iter()
            .enumerate()
            .map(|(i, &(kind, votes))| {
                let mut r = ReviewRecord::new(format!("r{i}"), "Widget", "Toys", 3, "body");
                if kind & 1 == 1 {
                    r.customer_id = Some(format!("c{}", i % 3));
                }
                if kind & 2 == 2 {
                    r.helpful_votes = Some(votes);
                }
                r
            })
            .collect();
        let qualifying = records
            .iter()
            .filter(|r| r.customer_id.is_some() && r.helpful_votes.is_some())
            .count();
        let total: u32 = reviewer_stats(&records).iter().map(|s| s.review_count).sum();
        prop_assert_eq!(total as usize, qualifying);
    }

    #[test]
    fn chi_square_invariant_under_permutations(
        rows in prop::collection::vec(prop::collection::vec(1u32..60, 3), 2..5),
        seed in any::<u64>(),
    ) {
        let table: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&c| f64::from(c)).collect()).collect();
        let base = chi_square_contingency(&table).unwrap();

        // deterministic pseudo-shuffle of rows and columns from the seed
        let mut permuted = table.clone();
        let row_shift = (seed as usize) % permuted.len();
        permuted.rotate_left(row_shift);
        for row in &mut permuted {
            let col_shift = (seed as usize / 7) % row.len();
            row.rotate_left(col_shift);
        }
        if seed % 2 == 0 {
            permuted.reverse();
        }
        let shuffled = chi_square_contingency(&permuted).unwrap();
        prop_assert!((base.statistic - shuffled.statistic).abs() < 1e-9 * (1.0 + base.statistic));
        prop_assert_eq!(base.degrees_of_freedom, shuffled.degrees_of_freedom);
    }

    #[test]
    fn chi_square_zero_iff_columns_proportional(
        base_col in prop::collection::vec(1u32..40, 2..6),
        multipliers in prop::collection::vec(1u32..5, 2..4),
    ) {
        let table: Vec<Vec<f64>> = base_col
            .iter()
            .map(|&c| multipliers.iter().map(|&k| f64::from(c * k)).collect())
            .collect();
        let result = chi_square_contingency(&table).unwrap();
        prop_assert!(result.statistic.abs() < 1e-9, "statistic {}", result.statistic);
        prop_assert!(result.statistic >= 0.0);
    }

    #[test]
    fn metrics_match_direct_counting(outcomes in prop::collection::vec((any::<bool>(), any::<bool>()), 1..100)) {
        // build one record + forced verdict per (actual_fake, predicted_fake)
        let mut records = Vec::new();
        let mut verdicts = Vec::new();
        for (i, &(actual_fake, predicted_fake)) in outcomes.iter().enumerate() {
            let mut r = ReviewRecord::new(format!("r{i}"), "Widget", "Toys", 3, "body");
            r.ground_label = Some(if actual_fake { GroundLabel::Fake } else { GroundLabel::Genuine });
            records.push(r);
            verdicts.push(Verdict {
                review_id: format!("r{i}"),
                is_fake: predicted_fake,
                fake_rules: vec![],
                genuine_rules: vec![],
                score: 0.0,
            });
        }
        let matrix = confusion_matrix(&verdicts, &records).unwrap();
        let report = metrics(&matrix).unwrap();

        // direct per-record counting, no matrix in between
        let n = outcomes.len() as f64;
        let correct = outcomes.iter().filter(|(a, p)| a == p).count() as f64;
        let tp = outcomes.iter().filter(|&&(a, p)| a && p).count() as f64;
        let predicted_fake = outcomes.iter().filter(|&&(_, p)| p).count() as f64;
        let actual_fake = outcomes.iter().filter(|&&(a, _)| a).count() as f64;

        prop_assert_eq!(matrix.total() as usize, outcomes.len());
        prop_assert!((report.accuracy - correct / n).abs() < 1e-12);
        match report.precision_fake {
            Some(p) => prop_assert!((p - tp / predicted_fake).abs() < 1e-12),
            None => prop_assert_eq!(predicted_fake, 0.0),
        }
        match report.recall_fake {
            Some(r) => prop_assert!((r - tp / actual_fake).abs() < 1e-12),
            None => prop_assert_eq!(actual_fake, 0.0),
        }
    }
}

/// Exhaustive (not generative) checks of the sentiment partition.
#[test]
fn sentiment_category_total_and_scale_invariant() {
    for p in 0..=100usize {
        for n in 0..=100usize {
            // total: every pair lands in exactly one bucket without panicking
            let category = sentiment_category(p, n);
            if p == 0 && n == 0 {
                assert_eq!(category, opspam_core::SentimentCategory::Neutral);
            }
            // scale invariance for nonzero counts
            if p >= 1 && n >= 1 {
                for k in 2..=4 {
                    assert_eq!(
                        sentiment_category(k * p, k * n),
                        category,
                        "scaling ({p},{n}) by {k}"
                    );
                }
            }
        }
    }
}
