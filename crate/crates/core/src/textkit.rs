//! Tokenization, word normalization, lexicon handling and basic text stats.
//!
//! Normalization keeps only the characters `a-z`, `'` and `-` after
//! lowercasing, so `"Great!!!"` and `"great"` collapse to the same token.
//! Everything downstream (rules, duplicate fingerprints, sentiment counts)
//! compares normalized tokens only.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

fn is_allowed_char(c: char) -> bool {
    matches!(c, 'a'..='z' | '\'' | '-')
}

/// Lowercase `word` and drop every character outside `a-z`, `'`, `-`.
///
/// May return an empty string (e.g. for `"123"`). Idempotent.
pub fn normalize_word(word: &str) -> String {
    word.chars()
        .flat_map(char::to_lowercase)
        .filter(|&c| is_allowed_char(c))
        .collect()
}

/// Split on whitespace, normalize each token and drop the ones that
/// normalize to nothing.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(normalize_word)
        .filter(|t| !t.is_empty())
        .collect()
}

/// Word and character counts for one piece of text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TextStats {
    /// Number of tokens left after normalization.
    pub word_count: usize,
    /// Number of characters in the raw text, before any normalization.
    pub char_count: usize,
}

/// Token count of the normalized text plus character count of the raw text.
pub fn text_stats(text: &str) -> TextStats {
    TextStats {
        word_count: tokenize(text).len(),
        char_count: text.chars().count(),
    }
}

/// Exact multiplicity count per token. Iterating the returned map visits
/// words in lexicographic order.
pub fn word_frequencies(tokens: &[String]) -> BTreeMap<String, usize> {
    let mut freqs = BTreeMap::new();
    for token in tokens {
        *freqs.entry(token.clone()).or_insert(0) += 1;
    }
    freqs
}

/// The `k` most frequent words, ties broken lexicographically.
pub fn most_frequent(freqs: &BTreeMap<String, usize>, k: usize) -> Vec<(String, usize)> {
    let mut entries: Vec<(String, usize)> = freqs
        .iter()
        .map(|(word, &count)| (word.clone(), count))
        .collect();
    // BTreeMap iteration is lexicographic, so a stable sort by count keeps
    // the alphabetical order within equal counts.
    entries.sort_by_key(|entry| core::cmp::Reverse(entry.1));
    entries.truncate(k);
    entries
}

/// A named set of normalized words loaded from a one-word-per-line list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    words: BTreeSet<String>,
}

/// Result of parsing a lexicon, with the count of lines that normalized to
/// nothing and were dropped.
#[derive(Debug, Clone)]
pub struct LexiconLoad {
    pub lexicon: Lexicon,
    pub empty_lines_skipped: usize,
}

impl Lexicon {
    /// An empty lexicon.
    pub fn new(name: impl Into<String>) -> Self {
        Lexicon {
            name: name.into(),
            words: BTreeSet::new(),
        }
    }

    /// Build a lexicon from raw words; each is normalized, empties dropped.
    pub fn from_words<I, S>(name: impl Into<String>, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut lexicon = Lexicon::new(name);
        for word in words {
            lexicon.insert(word.as_ref());
        }
        lexicon
    }

    /// Parse a lexicon file body: one word per line, `;`-prefixed comment
    /// lines and blank lines skipped, every surviving line trimmed and
    /// normalized. Lines that normalize to nothing are counted, not kept.
    pub fn parse(name: impl Into<String>, text: &str) -> LexiconLoad {
        let mut lexicon = Lexicon::new(name);
        let mut empty_lines_skipped = 0;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with(';') {
                continue;
            }
            if !lexicon.insert(line) {
                empty_lines_skipped += 1;
            }
        }
        LexiconLoad {
            lexicon,
            empty_lines_skipped,
        }
    }

    /// Normalize and insert one word. Returns false if it normalized to
    /// nothing and was dropped.
    pub fn insert(&mut self, word: &str) -> bool {
        let normalized = normalize_word(word);
        if normalized.is_empty() {
            return false;
        }
        self.words.insert(normalized);
        true
    }

    /// Membership test; the query is normalized first, so
    /// `contains("Ph.D.")` and `contains("phd")` agree.
    pub fn contains(&self, word: &str) -> bool {
        if word.chars().all(is_allowed_char) {
            self.words.contains(word)
        } else {
            self.words.contains(normalize_word(word).as_str())
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Iterate the normalized member words in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}
