//! The bundled word lists and directory-based overrides.
//!
//! Seven lexicons drive the rules: the two exaggeration bins, degrees and
//! honorifics, the two sentiment lists and the stopword list. The bundled
//! copies are compiled into the binary; `--lexicon-dir` swaps in a
//! directory holding files with the same names.

use std::path::Path;

use opspam_core::classifier::LexiconSet;
use opspam_core::textkit::{Lexicon, LexiconLoad};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot load lexicon \"{name}\" from {path}: {source}")]
    Unreadable {
        name: &'static str,
        path: String,
        source: std::io::Error,
    },
}

/// Lexicon names in loading order; each maps to `<name>.txt` in a lexicon
/// directory.
pub const LEXICON_NAMES: [&str; 7] = [
    "exaggeration-positive",
    "exaggeration-negative",
    "degrees",
    "honorifics",
    "sentiment-positive",
    "sentiment-negative",
    "stopwords",
];

const BUNDLED_SOURCES: [&str; 7] = [
    include_str!("../fixtures/lexicons/exaggeration-positive.txt"),
    include_str!("../fixtures/lexicons/exaggeration-negative.txt"),
    include_str!("../fixtures/lexicons/degrees.txt"),
    include_str!("../fixtures/lexicons/honorifics.txt"),
    include_str!("../fixtures/lexicons/sentiment-positive.txt"),
    include_str!("../fixtures/lexicons/sentiment-negative.txt"),
    include_str!("../fixtures/lexicons/stopwords.txt"),
];

/// A loaded lexicon set plus any skipped-line warnings worth surfacing.
#[derive(Debug, Clone)]
pub struct LoadedLexicons {
    pub set: LexiconSet,
    pub warnings: Vec<String>,
}

fn assemble(mut loads: impl Iterator<Item = LexiconLoad>) -> LoadedLexicons {
    let mut warnings = Vec::new();
    let mut next = |_: usize| {
        let load = loads.next().expect("seven lexicons");
        if load.empty_lines_skipped > 0 {
            warnings.push(format!(
                "lexicon \"{}\": {} line(s) normalized to empty and were skipped",
                load.lexicon.name(),
                load.empty_lines_skipped
            ));
        }
        load.lexicon
    };
    LoadedLexicons {
        set: LexiconSet {
            exaggeration_positive: next(0),
            exaggeration_negative: next(1),
            degrees: next(2),
            honorifics: next(3),
            sentiment_positive: next(4),
            sentiment_negative: next(5),
            stopwords: next(6),
        },
        warnings,
    }
}

/// The lexicons compiled into the binary.
pub fn bundled() -> LoadedLexicons {
    assemble(
        LEXICON_NAMES
            .iter()
            .zip(BUNDLED_SOURCES)
            .map(|(name, text)| Lexicon::parse(*name, text)),
    )
}

/// Load all seven lexicons from `<dir>/<name>.txt`.
pub fn load_dir(dir: &Path) -> Result<LoadedLexicons, LexiconError> {
    let mut loads = Vec::with_capacity(LEXICON_NAMES.len());
    for name in LEXICON_NAMES {
        let path = dir.join(format!("{name}.txt"));
        let text = std::fs::read_to_string(&path).map_err(|source| LexiconError::Unreadable {
            name,
            path: path.display().to_string(),
            source,
        })?;
        loads.push(Lexicon::parse(name, text.as_str()));
    }
    Ok(assemble(loads.into_iter()))
}
