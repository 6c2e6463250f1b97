//! JSON-lines corpus files.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use rubyeval_core::harness::CorpusPair;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One line of a corpus file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairLine {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub reference: String,
    pub candidate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantic_raw: Option<u8>,
}

impl From<PairLine> for CorpusPair {
    fn from(l: PairLine) -> Self {
        CorpusPair {
            id: l.id,
            source: l.source,
            reference: l.reference,
            candidate: l.candidate,
            semantic_raw: l.semantic_raw,
        }
    }
}

impl From<&CorpusPair> for PairLine {
    fn from(p: &CorpusPair) -> Self {
        PairLine {
            id: p.id.clone(),
            source: p.source.clone(),
            reference: p.reference.clone(),
            candidate: p.candidate.clone(),
            semantic_raw: p.semantic_raw,
        }
    }
}

/// A line that failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] io::Error),
    #[error("corpus has no valid pairs")]
    Empty { rejected: Vec<LineError> },
    #[error("duplicate id `{id}` on line {line} (first on line {first})")]
    DuplicateId { id: String, first: usize, line: usize },
}

/// Valid pairs in file order plus the rejected lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedCorpus {
    pub pairs: Vec<CorpusPair>,
    pub rejected: Vec<LineError>,
}

fn validate(line: &PairLine) -> Result<(), String> {
    if line.id.trim().is_empty() {
        return Err("`id` is empty".into());
    }
    if line.reference.trim().is_empty() {
        return Err("`reference` is empty".into());
    }
    match line.semantic_raw {
        Some(v) if v > 4 => Err(format!("`semantic_raw` {v} is outside 0..=4")),
        _ => Ok(()),
    }
}

/// Reads a corpus from any reader. Blank lines are skipped.
pub fn read_corpus(reader: impl BufRead) -> Result<LoadedCorpus, CorpusError> {
    let mut pairs = Vec::new();
    let mut rejected = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, text) in reader.lines().enumerate() {
        let text = text?;
        let line = i + 1;
        if text.trim().is_empty() {
            continue;
        }
        let parsed =
            serde_json::from_str::<PairLine>(&text).map_err(|e| e.to_string()).and_then(|p| validate(&p).map(|()| p));
        match parsed {
            Ok(p) => {
                if let Some(&first) = seen.get(&p.id) {
                    return Err(CorpusError::DuplicateId { id: p.id, first, line });
                }
                seen.insert(p.id.clone(), line);
                pairs.push(p.into());
            }
            Err(message) => rejected.push(LineError { line, message }),
        }
    }
    if pairs.is_empty() {
        return Err(CorpusError::Empty { rejected });
    }
    Ok(LoadedCorpus { pairs, rejected })
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<LoadedCorpus, CorpusError> {
    read_corpus(BufReader::new(File::open(path)?))
}

pub fn write_corpus(pairs: &[CorpusPair], mut out: impl Write) -> io::Result<()> {
    for p in pairs {
        serde_json::to_writer(&mut out, &PairLine::from(p))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
