//! Parsers for the two TSV review-dataset formats.
//!
//! Both formats are plain tab-separated UTF-8 with LF or CRLF line endings;
//! embedded tabs or newlines inside a field are not representable and such
//! lines surface as malformed. In strict mode the first malformed line
//! aborts the parse with its line number; in lenient mode malformed lines
//! are recorded in the [`ParseReport`] and skipped.

use std::collections::HashSet;
use std::io::BufRead;

use opspam_core::record::{GroundLabel, ReviewRecord};
use thiserror::Error;

/// The amazon format: 15 columns with a mandatory header line.
pub const AMAZON_COLUMNS: usize = 15;
/// The labeled format: 9 columns, header optional.
pub const LABELED_COLUMNS: usize = 9;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("read failed at line {line}: {source}")]
    Io { line: usize, source: std::io::Error },
}

/// Error handling mode for the parsers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Abort on the first malformed line.
    #[default]
    Strict,
    /// Skip malformed lines, recording each in the report.
    Lenient,
}

/// Per-parse bookkeeping: `records_ok + records_failed` always equals the
/// number of data lines consumed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub records_ok: usize,
    pub records_failed: usize,
    /// `(line_number, reason)` for every skipped line, lenient mode only.
    pub failures: Vec<(usize, String)>,
}

/// Which dataset format an input file is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    Amazon,
    #[default]
    Labeled,
}

impl InputFormat {
    pub fn name(self) -> &'static str {
        match self {
            InputFormat::Amazon => "amazon",
            InputFormat::Labeled => "labeled",
        }
    }
}

/// Parse either format, dispatching on `format`.
pub fn parse_tsv(
    reader: impl BufRead,
    format: InputFormat,
    mode: ParseMode,
) -> Result<(Vec<ReviewRecord>, ParseReport), IngestError> {
    match format {
        InputFormat::Amazon => parse_amazon_tsv(reader, mode),
        InputFormat::Labeled => parse_labeled_tsv(reader, mode),
    }
}

/// Parse the 15-column amazon review format. The first line is the header
/// and is always skipped. `verified_purchase` and `vine` are true exactly
/// when their column is `"Y"`; `marketplace` and `product_parent` are
/// discarded; ground labels and photo flags are absent in this format.
pub fn parse_amazon_tsv(
    reader: impl BufRead,
    mode: ParseMode,
) -> Result<(Vec<ReviewRecord>, ParseReport), IngestError> {
    let mut records = Vec::new();
    let mut report = ParseReport::default();
    let mut seen_ids = HashSet::new();

    for (index, line) in reader.lines().enumerate() {
        let line_number = index + 1;
        let line = line.map_err(|source| IngestError::Io {
            line: line_number,
            source,
        })?;
        if line_number == 1 {
            continue; // header
        }
        let line = line.strip_suffix('\r').unwrap_or(&line);
        match parse_amazon_line(line, &mut seen_ids) {
            Ok(record) => {
                records.push(record);
                report.records_ok += 1;
            }
            Err(reason) => fail(mode, &mut report, line_number, reason)?,
        }
    }
    Ok((records, report))
}

/// Parse the 9-column labeled deception format. A header line is skipped
/// when its first field is `DOC_ID`. `__label1__` marks a fake review and
/// `__label2__` a genuine one; vote counts, customer ids, dates and photo
/// flags do not exist in this format and stay absent.
pub fn parse_labeled_tsv(
    reader: impl BufRead,
    mode: ParseMode,
) -> Result<(Vec<ReviewRecord>, ParseReport), IngestError> {
    let mut records = Vec::new();
    let mut report = ParseReport::default();
    let mut seen_ids = HashSet::new();

    for (index, line) in reader.lines().enumerate() {
        let line_number = index + 1;
        let line = line.map_err(|source| IngestError::Io {
            line: line_number,
            source,
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line_number == 1 && line.split('\t').next() == Some("DOC_ID") {
            continue;
        }
        match parse_labeled_line(line, &mut seen_ids) {
            Ok(record) => {
                records.push(record);
                report.records_ok += 1;
            }
            Err(reason) => fail(mode, &mut report, line_number, reason)?,
        }
    }
    Ok((records, report))
}

fn fail(
    mode: ParseMode,
    report: &mut ParseReport,
    line: usize,
    reason: String,
) -> Result<(), IngestError> {
    match mode {
        ParseMode::Strict => Err(IngestError::Malformed { line, reason }),
        ParseMode::Lenient => {
            report.records_failed += 1;
            report.failures.push((line, reason));
            Ok(())
        }
    }
}

fn parse_amazon_line(line: &str, seen_ids: &mut HashSet<String>) -> Result<ReviewRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != AMAZON_COLUMNS {
        return Err(format!(
            "expected {AMAZON_COLUMNS} tab-separated fields, got {}",
            fields.len()
        ));
    }
    let review_id = nonempty_id(fields[2], seen_ids)?;
    let star_rating = parse_rating(fields[7])?;
    let helpful_votes = parse_votes(fields[8], "helpful_votes")?;
    let total_votes = parse_votes(fields[9], "total_votes")?;
    if helpful_votes > total_votes {
        return Err(format!(
            "helpful_votes {helpful_votes} exceeds total_votes {total_votes}"
        ));
    }
    Ok(ReviewRecord {
        review_id,
        customer_id: optional(fields[1]),
        product_id: fields[3].to_string(),
        product_title: fields[5].to_string(),
        product_category: fields[6].to_string(),
        star_rating,
        helpful_votes: Some(helpful_votes),
        total_votes: Some(total_votes),
        verified_purchase: fields[11] == "Y",
        vine: Some(fields[10] == "Y"),
        review_headline: fields[12].to_string(),
        review_body: fields[13].to_string(),
        review_date: optional(fields[14]),
        has_images: None,
        ground_label: None,
    })
}

fn parse_labeled_line(line: &str, seen_ids: &mut HashSet<String>) -> Result<ReviewRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != LABELED_COLUMNS {
        return Err(format!(
            "expected {LABELED_COLUMNS} tab-separated fields, got {}",
            fields.len()
        ));
    }
    let review_id = nonempty_id(fields[0], seen_ids)?;
    let ground_label = match fields[1] {
        "__label1__" => GroundLabel::Fake,
        "__label2__" => GroundLabel::Genuine,
        other => return Err(format!("unknown label \"{other}\"")),
    };
    let star_rating = parse_rating(fields[2])?;
    Ok(ReviewRecord {
        review_id,
        customer_id: None,
        product_id: fields[5].to_string(),
        product_title: fields[6].to_string(),
        product_category: fields[4].to_string(),
        star_rating,
        helpful_votes: None,
        total_votes: None,
        verified_purchase: fields[3] == "Y",
        vine: None,
        review_headline: fields[7].to_string(),
        review_body: fields[8].to_string(),
        review_date: None,
        has_images: None,
        ground_label: Some(ground_label),
    })
}

fn nonempty_id(raw: &str, seen_ids: &mut HashSet<String>) -> Result<String, String> {
    if raw.is_empty() {
        return Err("empty review id".to_string());
    }
    if !seen_ids.insert(raw.to_string()) {
        return Err(format!("duplicate review id \"{raw}\""));
    }
    Ok(raw.to_string())
}

fn parse_rating(raw: &str) -> Result<u8, String> {
    let rating: u8 = raw
        .parse()
        .map_err(|_| format!("invalid star rating \"{raw}\""))?;
    if !(1..=5).contains(&rating) {
        return Err(format!("star rating {rating} outside 1..5"));
    }
    Ok(rating)
}

fn parse_votes(raw: &str, column: &str) -> Result<u32, String> {
    raw.parse()
        .map_err(|_| format!("invalid {column} \"{raw}\""))
}

fn optional(raw: &str) -> Option<String> {
    if raw.is_empty() {
        None
    } else {
        Some(raw.to_string())
    }
}

/// Serialize records back to the amazon TSV format, header included.
/// Discarded columns are emitted as placeholders (`US` marketplace, zero
/// product parent); absent vote counts serialize as zero.
pub fn serialize_amazon_tsv(records: &[ReviewRecord]) -> String {
    let mut out = String::from(
        "marketplace\tcustomer_id\treview_id\tproduct_id\tproduct_parent\tproduct_title\t\
         product_category\tstar_rating\thelpful_votes\ttotal_votes\tvine\tverified_purchase\t\
         review_headline\treview_body\treview_date\n",
    );
    for r in records {
        let yn = |b: bool| if b { "Y" } else { "N" };
        out.push_str(&format!(
            "US\t{}\t{}\t{}\t0\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.customer_id.as_deref().unwrap_or(""),
            r.review_id,
            r.product_id,
            r.product_title,
            r.product_category,
            r.star_rating,
            r.helpful_votes.unwrap_or(0),
            r.total_votes.unwrap_or(0),
            yn(r.vine.unwrap_or(false)),
            yn(r.verified_purchase),
            r.review_headline,
            r.review_body,
            r.review_date.as_deref().unwrap_or(""),
        ));
    }
    out
}

/// Serialize records back to the labeled TSV format, header included.
/// Every record must carry a ground label.
pub fn serialize_labeled_tsv(records: &[ReviewRecord]) -> Result<String, IngestError> {
    let mut out = String::from(
        "DOC_ID\tLABEL\tRATING\tVERIFIED_PURCHASE\tPRODUCT_CATEGORY\tPRODUCT_ID\t\
         PRODUCT_TITLE\tREVIEW_TITLE\tREVIEW_TEXT\n",
    );
    for (i, r) in records.iter().enumerate() {
        let label = match r.ground_label {
            Some(GroundLabel::Fake) => "__label1__",
            Some(GroundLabel::Genuine) => "__label2__",
            None => {
                return Err(IngestError::Malformed {
                    line: i + 2,
                    reason: format!(
                        "record \"{}\" has no ground label to serialize",
                        r.review_id
                    ),
                })
            }
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.review_id,
            label,
            r.star_rating,
            if r.verified_purchase { "Y" } else { "N" },
            r.product_category,
            r.product_id,
            r.product_title,
            r.review_headline,
            r.review_body,
        ));
    }
    Ok(out)
}
