//! Similarity scores between a reference method and a candidate translation.
//!
//! | score | representation | distance |
//! |-------|----------------|----------|
//! | BLEU  | tokens         | clipped n-gram precision |
//! | STS   | tokens         | Levenshtein |
//! | TRS   | syntax trees   | tree edit distance |
//! | GRS   | dependence graphs | Exas feature-vector distance |
//!
//! RUBY reports the graph score when both sides have a dependence graph, the
//! tree score when both parse, and the token score otherwise.

mod bleu;
mod ruby;
mod sts;
mod ted;

pub use bleu::{bleu, bleu_lexemes, BleuConfig, BleuFlag, BleuScore, BleuStats, BrevityPenalty, ZeroPolicy};
pub use ruby::{grs, ruby, ruby_with, RubyConfig, RubyError, RubyLevel, RubyOutcome};
pub use sts::{levenshtein, sts, sts_lexemes, StsNorm, StsScore};
pub use ted::{
    rename_cost, ted, top_down_distance, tree_edit_distance, trs, trs_with_limit, TedResult, TrsScore,
    DEFAULT_EXACT_LIMIT,
};

use alloc::string::String;

/// Scores of one reference/candidate pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub id: String,
    pub bleu: f64,
    pub sts: f64,
    pub trs: Option<f64>,
    pub grs: Option<f64>,
    pub ruby: f64,
    pub ruby_level: RubyLevel,
    /// Human score divided by 4.
    pub semantic: Option<f64>,
    /// TRS came from the top-down bound instead of the exact distance.
    pub trs_approximate: bool,
}

impl ScoreRecord {
    /// The value of a named metric (`bleu`, `sts`, `trs`, `grs`, `ruby`,
    /// `semantic`), if present.
    pub fn metric(&self, name: &str) -> Option<f64> {
        match name {
            "bleu" => Some(self.bleu),
            "sts" => Some(self.sts),
            "trs" => self.trs,
            "grs" => self.grs,
            "ruby" => Some(self.ruby),
            "semantic" => self.semantic,
            _ => None,
        }
    }
}

/// Metric names accepted by [`ScoreRecord::metric`].
pub const METRIC_NAMES: &[&str] = &["bleu", "sts", "trs", "grs", "ruby", "semantic"];

/// Maps the 0 to 4 human scale onto `[0, 1]`.
pub fn normalize_semantic(raw: u8) -> Option<f64> {
    (raw <= 4).then(|| f64::from(raw) / 4.0)
}
