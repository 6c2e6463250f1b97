//! Record CSV and summary JSON.

use std::io::{self, Read, Write};

use rubyeval_core::harness::{CorpusReport, CorpusSummary, Failure};
use rubyeval_core::metrics::{RubyLevel, ScoreRecord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad record file: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad record on row {row}: {message}")]
    Invalid { row: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    id: String,
    bleu: f64,
    sts: f64,
    trs: Option<f64>,
    grs: Option<f64>,
    ruby: f64,
    ruby_level: String,
    semantic: Option<f64>,
}

pub fn write_records(records: &[ScoreRecord], out: impl Write) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(Row {
            id: r.id.clone(),
            bleu: r.bleu,
            sts: r.sts,
            trs: r.trs,
            grs: r.grs,
            ruby: r.ruby,
            ruby_level: r.ruby_level.as_str().to_string(),
            semantic: r.semantic,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads records written by [`write_records`]. `trs_approximate` is not
/// stored and reads back as `false`.
pub fn read_records(input: impl Read) -> Result<Vec<ScoreRecord>, ReportError> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let row = row?;
        let ruby_level: RubyLevel =
            row.ruby_level.parse().map_err(|e: &str| ReportError::Invalid { row: i + 1, message: e.to_string() })?;
        out.push(ScoreRecord {
            id: row.id,
            bleu: row.bleu,
            sts: row.sts,
            trs: row.trs,
            grs: row.grs,
            ruby: row.ruby,
            ruby_level,
            semantic: row.semantic,
            trs_approximate: false,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricJson {
    pub metric: String,
    pub count: usize,
    pub mean: Option<f64>,
    pub spearman_vs_semantic: Option<f64>,
    pub spearman_n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelsJson {
    #[serde(rename = "GRS")]
    pub grs: usize,
    #[serde(rename = "TRS")]
    pub trs: usize,
    #[serde(rename = "STS")]
    pub sts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureJson {
    pub index: usize,
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub pairs: usize,
    pub failures: usize,
    /// Records where TRS was approximated by the top-down bound.
    pub trs_approximate: usize,
    pub levels: LevelsJson,
    pub metrics: Vec<MetricJson>,
    pub failed_pairs: Vec<FailureJson>,
}

impl SummaryJson {
    pub fn new(summary: &CorpusSummary, records: &[ScoreRecord], failures: &[Failure]) -> Self {
        SummaryJson {
            pairs: summary.pairs,
            failures: summary.failures,
            trs_approximate: records.iter().filter(|r| r.trs_approximate).count(),
            levels: LevelsJson { grs: summary.levels.grs, trs: summary.levels.trs, sts: summary.levels.sts },
            metrics: summary
                .metrics
                .iter()
                .map(|m| MetricJson {
                    metric: m.metric.to_string(),
                    count: m.count,
                    mean: m.mean,
                    spearman_vs_semantic: m.spearman_vs_semantic,
                    spearman_n: m.spearman_n,
                })
                .collect(),
            failed_pairs: failures
                .iter()
                .map(|f| FailureJson { index: f.index, id: f.id.clone(), error: f.error.to_string() })
                .collect(),
        }
    }

    pub fn from_report(report: &CorpusReport) -> Self {
        Self::new(&report.summary, &report.records, &report.failures)
    }
}

pub fn write_summary(summary: &SummaryJson, mut out: impl Write) -> Result<(), ReportError> {
    serde_json::to_writer_pretty(&mut out, summary)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn read_summary(input: impl Read) -> Result<SummaryJson, ReportError> {
    Ok(serde_json::from_reader(input)?)
}
