//! The unified review record both dataset formats parse into.

use alloc::string::String;

/// Ground-truth annotation carried by the labeled dataset format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundLabel {
    Fake,
    Genuine,
}

/// One product review.
///
/// Fields a format does not carry are `None`, never defaulted: rules that
/// depend on an absent field abstain instead of firing on a made-up zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewRecord {
    /// Unique within a parsed corpus, never empty.
    pub review_id: String,
    pub customer_id: Option<String>,
    pub product_id: String,
    pub product_title: String,
    pub product_category: String,
    /// Always in `1..=5`.
    pub star_rating: u8,
    pub helpful_votes: Option<u32>,
    pub total_votes: Option<u32>,
    pub verified_purchase: bool,
    pub vine: Option<bool>,
    pub review_headline: String,
    pub review_body: String,
    /// ISO date as given by the dataset; not validated.
    pub review_date: Option<String>,
    /// Whether the review carries product photos. Neither dataset format
    /// provides this, so it is normally `None`.
    pub has_images: Option<bool>,
    pub ground_label: Option<GroundLabel>,
}

impl ReviewRecord {
    /// A record with the given identifying fields and everything optional
    /// absent. Handy for constructing records in tests and synthetic runs.
    pub fn new(
        review_id: impl Into<String>,
        product_title: impl Into<String>,
        product_category: impl Into<String>,
        star_rating: u8,
        review_body: impl Into<String>,
    ) -> Self {
        ReviewRecord {
            review_id: review_id.into(),
            customer_id: None,
            product_id: String::new(),
            product_title: product_title.into(),
            product_category: product_category.into(),
            star_rating,
            helpful_votes: None,
            total_votes: None,
            verified_purchase: false,
            vine: None,
            review_headline: String::new(),
            review_body: review_body.into(),
            review_date: None,
            has_images: None,
            ground_label: None,
        }
    }
}
