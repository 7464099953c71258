//! Rule-based detection of fake product reviews.
//!
//! The crate evaluates a set of semantic heuristics over review records —
//! exaggerated wording, claimed professions, review length, helpful votes,
//! product mentions, attached photos, duplicated text and a lexicon-ratio
//! sentiment check — and combines the per-rule verdicts into a per-review
//! decision. An evaluation module tallies decisions against ground-truth
//! labels and runs a Pearson chi-squared contingency test on the result.
//!
//! The crate is `no_std`-compatible (`alloc` required). File ingestion, the
//! bundled lexicons and the command-line interface live in the companion
//! `opspam` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("opspam-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod classifier;
pub mod eval;
pub mod record;
pub mod rules;
pub mod textkit;

pub use classifier::{CombineMode, DuplicateIndex, LexiconSet, ReviewerStats, Verdict};
pub use record::{GroundLabel, ReviewRecord};
pub use rules::{RuleConfig, RuleId, RuleVerdict, SentimentCategory, SentimentSummary, Signal};
pub use textkit::{Lexicon, TextStats};

/// Float math that works with and without `std`.
pub(crate) mod math {
    #[cfg(feature = "std")]
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }

    #[cfg(feature = "std")]
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }

    #[cfg(not(feature = "std"))]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    #[cfg(not(feature = "std"))]
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }

    pub fn abs(x: f64) -> f64 {
        if x < 0.0 {
            -x
        } else {
            x
        }
    }
}
