//! Multi-level similarity metrics for evaluating machine-migrated source code.
//!
//! The crate compares a translated method against a reference method at three
//! representation levels:
//!
//! * tokens ([`minilang::tokenize`]) scored with BLEU and STS,
//! * syntax trees ([`minilang::parse`]) scored with TRS (tree edit distance),
//! * program dependence graphs ([`pdg::build_pdg`]) scored with GRS through
//!   Exas feature vectors ([`exas`]).
//!
//! [`metrics::ruby`] combines them into a single score taken at the highest
//! level both sides support. The [`stats`] module carries the statistics used
//! to compare metrics and models, and [`harness`] scores whole corpora.
//!
//! The crate is `no_std` and only needs `alloc`. Enable the `std` feature to
//! get `std::error::Error` impls on the error types.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod exas;
pub mod harness;
pub mod metrics;
pub mod minilang;
pub mod pdg;
pub mod stats;

pub use exas::{extract_features, vector_distance, Feature, FeatureVector};
pub use harness::{score_corpus, CorpusPair, CorpusReport, ScoringConfig};
pub use metrics::{bleu, grs, ruby, sts, trs, BleuConfig, RubyLevel, ScoreRecord};
pub use minilang::{parse, tokenize, ParseOutcome, SyntaxTree, TokenSequence, TokenizeMode};
pub use pdg::{build_pdg, DependenceGraph};
