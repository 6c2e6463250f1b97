//! File formats and command line for `rubyeval-core`.
//!
//! Corpora are JSON lines with the fields `id`, `source` (optional),
//! `reference`, `candidate` and `semantic_raw` (optional, 0 to 4). Scored
//! corpora are written as a CSV of per-pair records plus a JSON summary.

pub mod cli;
pub mod corpus;
pub mod report;

pub use corpus::{load_corpus, read_corpus, write_corpus, CorpusError, LineError, LoadedCorpus, PairLine};
pub use report::{read_records, read_summary, write_records, write_summary, ReportError, SummaryJson};
pub use rubyeval_core;
