use alloc::vec::Vec;
use core::str::FromStr;

use crate::minilang::TokenSequence;

/// Denominator of the normalized edit distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StsNorm {
    #[default]
    MaxLength,
    ReferenceLength,
}

impl FromStr for StsNorm {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" | "max-length" => Ok(StsNorm::MaxLength),
            "ref" | "reference" | "reference-length" => Ok(StsNorm::ReferenceLength),
            _ => Err("expected `max-length` or `reference-length`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StsScore {
    pub value: f64,
    pub distance: usize,
    /// The raw value fell below 0 and was clamped.
    pub clamped: bool,
}

/// Unit-cost Levenshtein distance between two sequences.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = alloc::vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let substitute = prev[j] + usize::from(x != y);
            cur[j + 1] = substitute.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 - distance / norm`, clamped to `[0, 1]`.
pub fn sts(reference: &TokenSequence, candidate: &TokenSequence, norm: StsNorm) -> StsScore {
    sts_lexemes(&reference.lexemes(), &candidate.lexemes(), norm)
}

pub fn sts_lexemes(reference: &[&str], candidate: &[&str], norm: StsNorm) -> StsScore {
    let distance = levenshtein(reference, candidate);
    let denom = match norm {
        StsNorm::MaxLength => reference.len().max(candidate.len()),
        StsNorm::ReferenceLength => reference.len(),
    };
    let raw = if denom == 0 {
        if distance == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - distance as f64 / denom as f64
    };
    StsScore { value: raw.clamp(0.0, 1.0), distance, clamped: raw < 0.0 }
}
