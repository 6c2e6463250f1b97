//! Corpus scoring, summaries, paired model comparison and BLEU-preserving
//! candidate permutations.

mod permute;

pub use permute::{permute_preserving_bleu, BlockStrategy, Permutation};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::metrics::{
    bleu, normalize_semantic, ruby_with, BleuConfig, RubyConfig, RubyError, RubyLevel, ScoreRecord, METRIC_NAMES,
};
use crate::minilang::{tokenize, TokenizeMode};
use crate::stats::{paired_t_test, spearman, PairedSample, StatsError, TTestResult};

/// One reference/candidate pair of a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPair {
    pub id: String,
    /// Method in the original language, kept for human context only.
    pub source: Option<String>,
    pub reference: String,
    pub candidate: String,
    /// Human score on the 0 to 4 scale.
    pub semantic_raw: Option<u8>,
}

impl CorpusPair {
    pub fn new(id: impl Into<String>, reference: impl Into<String>, candidate: impl Into<String>) -> Self {
        CorpusPair {
            id: id.into(),
            source: None,
            reference: reference.into(),
            candidate: candidate.into(),
            semantic_raw: None,
        }
    }

    pub fn with_semantic(mut self, raw: u8) -> Self {
        self.semantic_raw = Some(raw);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScoringConfig {
    pub bleu: BleuConfig,
    /// `ruby.mode` is also the tokenization used for BLEU.
    pub ruby: RubyConfig,
}

impl ScoringConfig {
    pub fn with_mode(mode: TokenizeMode) -> Self {
        ScoringConfig { bleu: BleuConfig::default(), ruby: RubyConfig { mode, ..RubyConfig::default() } }
    }

    pub fn mode(&self) -> TokenizeMode {
        self.ruby.mode
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoreError {
    EmptyReference,
    SemanticOutOfRange(u8),
    Ruby(RubyError),
}

impl fmt::Display for ScoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreError::EmptyReference => f.write_str("reference is empty"),
            ScoreError::SemanticOutOfRange(v) => write!(f, "semantic_raw {v} is outside 0..=4"),
            ScoreError::Ruby(e) => e.fmt(f),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScoreError {}

/// Every metric for one pair.
pub fn score_pair(pair: &CorpusPair, cfg: &ScoringConfig) -> Result<ScoreRecord, ScoreError> {
    if pair.reference.trim().is_empty() {
        return Err(ScoreError::EmptyReference);
    }
    let semantic = match pair.semantic_raw {
        Some(raw) => Some(normalize_semantic(raw).ok_or(ScoreError::SemanticOutOfRange(raw))?),
        None => None,
    };
    let outcome = ruby_with(&pair.reference, &pair.candidate, &cfg.ruby).map_err(ScoreError::Ruby)?;
    let b = bleu(&tokenize(&pair.reference, cfg.mode()), &tokenize(&pair.candidate, cfg.mode()), &cfg.bleu);
    Ok(ScoreRecord {
        id: pair.id.clone(),
        bleu: b.value,
        sts: outcome.sts.value,
        trs: outcome.trs.map(|t| t.value),
        grs: outcome.grs,
        ruby: outcome.ruby,
        ruby_level: outcome.level,
        semantic,
        trs_approximate: outcome.trs.is_some_and(|t| t.approximate),
    })
}

/// A pair that could not be scored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Position in the input.
    pub index: usize,
    pub id: String,
    pub error: ScoreError,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub metric: &'static str,
    /// Records carrying this metric.
    pub count: usize,
    pub mean: Option<f64>,
    /// Spearman against the semantic score over records carrying both.
    pub spearman_vs_semantic: Option<f64>,
    pub spearman_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LevelCounts {
    pub grs: usize,
    pub trs: usize,
    pub sts: usize,
}

impl LevelCounts {
    pub fn get(&self, level: RubyLevel) -> usize {
        match level {
            RubyLevel::Grs => self.grs,
            RubyLevel::Trs => self.trs,
            RubyLevel::Sts => self.sts,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSummary {
    pub pairs: usize,
    pub failures: usize,
    /// Records where RUBY was taken at each level.
    pub levels: LevelCounts,
    /// One entry per name in [`METRIC_NAMES`], in that order.
    pub metrics: Vec<MetricSummary>,
}

impl CorpusSummary {
    pub fn metric(&self, name: &str) -> Option<&MetricSummary> {
        self.metrics.iter().find(|m| m.metric == name)
    }

    /// Computed over the records sorted by id, so input order never changes
    /// the result.
    pub fn from_records(records: &[ScoreRecord], failures: usize) -> Self {
        let mut sorted: Vec<&ScoreRecord> = records.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        let mut levels = LevelCounts::default();
        for r in &sorted {
            match r.ruby_level {
                RubyLevel::Grs => levels.grs += 1,
                RubyLevel::Trs => levels.trs += 1,
                RubyLevel::Sts => levels.sts += 1,
            }
        }
        let metrics = METRIC_NAMES
            .iter()
            .map(|&name| {
                let values: Vec<f64> = sorted.iter().filter_map(|r| r.metric(name)).collect();
                let mean = (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64);
                let (xs, ys): (Vec<f64>, Vec<f64>) =
                    sorted.iter().filter_map(|r| Some((r.metric(name)?, r.semantic?))).unzip();
                MetricSummary {
                    metric: name,
                    count: values.len(),
                    mean,
                    spearman_vs_semantic: spearman(&xs, &ys).ok(),
                    spearman_n: xs.len(),
                }
            })
            .collect();
        CorpusSummary { pairs: records.len(), failures, levels, metrics }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    /// In input order.
    pub records: Vec<ScoreRecord>,
    pub failures: Vec<Failure>,
    pub summary: CorpusSummary,
}

/// Scores every pair; pairs that fail are listed in `failures` and the run
/// continues.
pub fn score_corpus(pairs: &[CorpusPair], cfg: &ScoringConfig) -> CorpusReport {
    let mut records = Vec::with_capacity(pairs.len());
    let mut failures = Vec::new();
    for (index, pair) in pairs.iter().enumerate() {
        match score_pair(pair, cfg) {
            Ok(r) => records.push(r),
            Err(error) => failures.push(Failure { index, id: pair.id.clone(), error }),
        }
    }
    let summary = CorpusSummary::from_records(&records, failures.len());
    CorpusReport { records, failures, summary }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompareError {
    UnknownMetric(String),
    /// Ids present in only one of the reports.
    IdMismatch {
        only_a: Vec<String>,
        only_b: Vec<String>,
    },
    DuplicateId(String),
    Stats(StatsError),
}

impl fmt::Display for CompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareError::UnknownMetric(m) => write!(f, "unknown metric `{m}`"),
            CompareError::IdMismatch { only_a, only_b } => {
                write!(
                    f,
                    "reports cover different ids; only in a: [{}]; only in b: [{}]",
                    only_a.join(", "),
                    only_b.join(", ")
                )
            }
            CompareError::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            CompareError::Stats(e) => e.fmt(f),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CompareError {}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelComparison {
    pub metric: String,
    /// Pairs where both sides carry the metric.
    pub n: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub test: TTestResult,
}

fn by_id(records: &[ScoreRecord]) -> Result<BTreeMap<&str, &ScoreRecord>, CompareError> {
    let mut map = BTreeMap::new();
    for r in records {
        if map.insert(r.id.as_str(), r).is_some() {
            return Err(CompareError::DuplicateId(r.id.clone()));
        }
    }
    Ok(map)
}

/// Paired t-test of `metric` between two scorings of the same ids.
///
/// For optional metrics (`trs`, `grs`, `semantic`) only ids where both sides
/// carry a value enter the test.
pub fn compare_models(a: &[ScoreRecord], b: &[ScoreRecord], metric: &str) -> Result<ModelComparison, CompareError> {
    if !METRIC_NAMES.contains(&metric) {
        return Err(CompareError::UnknownMetric(metric.to_string()));
    }
    let (ma, mb) = (by_id(a)?, by_id(b)?);
    let ka: BTreeSet<&str> = ma.keys().copied().collect();
    let kb: BTreeSet<&str> = mb.keys().copied().collect();
    if ka != kb {
        return Err(CompareError::IdMismatch {
            only_a: ka.difference(&kb).map(|s| s.to_string()).collect(),
            only_b: kb.difference(&ka).map(|s| s.to_string()).collect(),
        });
    }
    let (mut ids, mut xs, mut ys) = (Vec::new(), Vec::new(), Vec::new());
    for (id, ra) in &ma {
        if let (Some(x), Some(y)) = (ra.metric(metric), mb[id].metric(metric)) {
            ids.push(id.to_string());
            xs.push(x);
            ys.push(y);
        }
    }
    let n = xs.len();
    let sample = PairedSample::new(ids, xs, ys).map_err(CompareError::Stats)?;
    Ok(ModelComparison {
        metric: metric.to_string(),
        n,
        mean_a: sample.a.iter().sum::<f64>() / n as f64,
        mean_b: sample.b.iter().sum::<f64>() / n as f64,
        test: paired_t_test(&sample),
    })
}
