use core::fmt;
use core::str::FromStr;

use super::sts::{sts, StsNorm, StsScore};
use super::ted::{trs_with_limit, TrsScore, DEFAULT_EXACT_LIMIT};
use crate::exas::{extract_features, similarity, DEFAULT_MAX_PATH_LENGTH};
use crate::minilang::{parse, tokenize, Diagnostic, TokenizeMode};
use crate::pdg::{build_pdg, DependenceGraph};

/// Representation level a RUBY score was taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RubyLevel {
    Grs,
    Trs,
    Sts,
}

impl RubyLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            RubyLevel::Grs => "GRS",
            RubyLevel::Trs => "TRS",
            RubyLevel::Sts => "STS",
        }
    }
}

impl fmt::Display for RubyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RubyLevel {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "GRS" | "grs" => Ok(RubyLevel::Grs),
            "TRS" | "trs" => Ok(RubyLevel::Trs),
            "STS" | "sts" => Ok(RubyLevel::Sts),
            _ => Err("expected GRS, TRS or STS"),
        }
    }
}

/// `1 - L1 / mass` over the Exas vectors of two graphs.
pub fn grs(reference: &DependenceGraph, candidate: &DependenceGraph, max_path_length: usize) -> f64 {
    let v1 = extract_features(reference, max_path_length);
    let v2 = extract_features(candidate, max_path_length);
    similarity(&v1, &v2).unwrap_or(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RubyConfig {
    /// Tokenization for the STS level.
    pub mode: TokenizeMode,
    pub sts_norm: StsNorm,
    pub max_path_length: usize,
    pub ted_exact_limit: usize,
}

impl Default for RubyConfig {
    fn default() -> Self {
        RubyConfig {
            mode: TokenizeMode::Lexical,
            sts_norm: StsNorm::MaxLength,
            max_path_length: DEFAULT_MAX_PATH_LENGTH,
            ted_exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RubyOutcome {
    pub ruby: f64,
    pub level: RubyLevel,
    pub sts: StsScore,
    /// Present when both sides parse.
    pub trs: Option<TrsScore>,
    /// Present when both sides have a dependence graph.
    pub grs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RubyError {
    ReferenceUnparsable(Diagnostic),
}

impl fmt::Display for RubyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RubyError::ReferenceUnparsable(d) => write!(f, "reference does not parse: {d}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RubyError {}

/// RUBY with the default configuration.
pub fn ruby(reference_source: &str, candidate_source: &str) -> Result<RubyOutcome, RubyError> {
    ruby_with(reference_source, candidate_source, &RubyConfig::default())
}

/// GRS when both graphs exist, else TRS when both trees exist, else STS.
pub fn ruby_with(reference_source: &str, candidate_source: &str, cfg: &RubyConfig) -> Result<RubyOutcome, RubyError> {
    let ref_parse = parse(&tokenize(reference_source, TokenizeMode::Lexical));
    let ref_tree = match ref_parse.tree {
        Some(t) => t,
        None => {
            let d = ref_parse.diagnostics.into_iter().next().unwrap_or(Diagnostic {
                position: crate::minilang::Position { line: 1, column: 1 },
                message: "no tree".into(),
            });
            return Err(RubyError::ReferenceUnparsable(d));
        }
    };
    let cand_parse = parse(&tokenize(candidate_source, TokenizeMode::Lexical));

    let sts_score = if cfg.mode == TokenizeMode::Lexical {
        sts(&ref_parse.tokens, &cand_parse.tokens, cfg.sts_norm)
    } else {
        sts(&tokenize(reference_source, cfg.mode), &tokenize(candidate_source, cfg.mode), cfg.sts_norm)
    };

    let mut trs_score = None;
    let mut grs_score = None;
    if let Some(cand_tree) = &cand_parse.tree {
        trs_score = Some(trs_with_limit(&ref_tree, cand_tree, cfg.ted_exact_limit));
        if let (Ok(g1), Ok(g2)) = (build_pdg(&ref_tree), build_pdg(cand_tree)) {
            grs_score = Some(grs(&g1, &g2, cfg.max_path_length));
        }
    }

    let (ruby, level) = match (grs_score, trs_score) {
        (Some(g), _) => (g, RubyLevel::Grs),
        (None, Some(t)) => (t.value, RubyLevel::Trs),
        (None, None) => (sts_score.value, RubyLevel::Sts),
    };
    Ok(RubyOutcome { ruby, level, sts: sts_score, trs: trs_score, grs: grs_score })
}
