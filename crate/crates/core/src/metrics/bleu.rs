use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::str::FromStr;

use num_rational::Ratio;

use crate::minilang::TokenSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BrevityPenalty {
    /// `len(cand) / len(ref)` when the candidate is not longer.
    #[default]
    Ratio,
    /// `exp(1 - len(ref) / len(cand))` when the candidate is not longer.
    Exponential,
}

impl FromStr for BrevityPenalty {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(BrevityPenalty::Ratio),
            "exp" | "exponential" => Ok(BrevityPenalty::Exponential),
            _ => Err("expected `ratio` or `exp`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroPolicy {
    /// Any order without a match makes the score 0.
    #[default]
    ScoreZero,
    /// Every precision becomes `(matches + 1) / (total + 1)`.
    AddOne,
}

impl FromStr for ZeroPolicy {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" | "score-zero" => Ok(ZeroPolicy::ScoreZero),
            "add-one" | "smooth" => Ok(ZeroPolicy::AddOne),
            _ => Err("expected `score-zero` or `add-one`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BleuConfig {
    pub max_n: usize,
    pub brevity_penalty: BrevityPenalty,
    pub zero_policy: ZeroPolicy,
}

impl Default for BleuConfig {
    fn default() -> Self {
        BleuConfig { max_n: 4, brevity_penalty: BrevityPenalty::Ratio, zero_policy: ZeroPolicy::ScoreZero }
    }
}

impl BleuConfig {
    pub fn with_max_n(max_n: usize) -> Self {
        BleuConfig { max_n, ..Self::default() }
    }
}

/// Clipped n-gram match counts for orders `1..=max_n`.
///
/// Two candidates with equal stats against one reference have equal BLEU
/// under every configuration with the same `max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BleuStats {
    /// `matches[i]`: clipped matches of order `i + 1`.
    pub matches: Vec<u64>,
    /// `totals[i]`: candidate n-grams of order `i + 1`.
    pub totals: Vec<u64>,
    pub reference_len: usize,
    pub candidate_len: usize,
}

fn ngram_counts<'t, 'a>(tokens: &'t [&'a str], n: usize) -> BTreeMap<&'t [&'a str], u64> {
    let mut counts = BTreeMap::new();
    if n > 0 && tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

impl BleuStats {
    pub fn compute(reference: &[&str], candidate: &[&str], max_n: usize) -> Self {
        let mut matches = Vec::with_capacity(max_n);
        let mut totals = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let cand = ngram_counts(candidate, n);
            let refc = ngram_counts(reference, n);
            let total: u64 = cand.values().sum();
            let matched: u64 = cand.iter().map(|(gram, &c)| c.min(refc.get(gram).copied().unwrap_or(0))).sum();
            matches.push(matched);
            totals.push(total);
        }
        BleuStats { matches, totals, reference_len: reference.len(), candidate_len: candidate.len() }
    }

    pub fn max_n(&self) -> usize {
        self.matches.len()
    }

    /// Precision of order `n` (1-based) after the zero policy; `None` when
    /// the candidate has no n-grams of that order and no smoothing applies.
    pub fn precision(&self, n: usize, policy: ZeroPolicy) -> Option<Ratio<u64>> {
        let (m, t) = (self.matches[n - 1], self.totals[n - 1]);
        match policy {
            ZeroPolicy::AddOne => Some(Ratio::new(m + 1, t + 1)),
            ZeroPolicy::ScoreZero if t == 0 => None,
            ZeroPolicy::ScoreZero => Some(Ratio::new(m, t)),
        }
    }

    /// Length ratio `min(1, len(cand) / len(ref))`.
    pub fn length_ratio(&self) -> Ratio<u64> {
        if self.reference_len == 0 || self.candidate_len >= self.reference_len {
            Ratio::from_integer(1)
        } else {
            Ratio::new(self.candidate_len as u64, self.reference_len as u64)
        }
    }

    /// `BLEU^max_n` as an exact fraction (ratio brevity penalty only).
    ///
    /// `BP^n * P_1 * ... * P_n`; zero when the zero policy fires.
    pub fn score_power(&self, policy: ZeroPolicy) -> Ratio<u128> {
        let widen = |r: Ratio<u64>| Ratio::new(u128::from(*r.numer()), u128::from(*r.denom()));
        let mut acc = Ratio::from_integer(1u128);
        for n in 1..=self.max_n() {
            match self.precision(n, policy) {
                Some(p) => acc *= widen(p) * widen(self.length_ratio()),
                None => return Ratio::from_integer(0),
            }
        }
        acc
    }

    /// Floating-point BLEU for `cfg` (which must use the same `max_n`).
    pub fn score(&self, cfg: &BleuConfig) -> f64 {
        let n = self.max_n();
        if n == 0 || self.candidate_len == 0 || self.reference_len == 0 {
            return 0.0;
        }
        let mut log_sum = 0.0;
        for i in 1..=n {
            match self.precision(i, cfg.zero_policy) {
                Some(p) if *p.numer() > 0 => {
                    log_sum += libm::log(*p.numer() as f64) - libm::log(*p.denom() as f64);
                }
                _ => return 0.0,
            }
        }
        let (c, r) = (self.candidate_len as f64, self.reference_len as f64);
        let bp = if self.candidate_len >= self.reference_len {
            1.0
        } else {
            match cfg.brevity_penalty {
                BrevityPenalty::Ratio => c / r,
                BrevityPenalty::Exponential => libm::exp(1.0 - r / c),
            }
        };
        (bp * libm::exp(log_sum / n as f64)).clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BleuFlag {
    EmptyCandidate,
    EmptyReference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BleuScore {
    pub value: f64,
    pub stats: BleuStats,
    /// Set when an empty side forced the score to 0.
    pub flag: Option<BleuFlag>,
}

/// Sentence-level BLEU of `candidate` against `reference`.
pub fn bleu(reference: &TokenSequence, candidate: &TokenSequence, cfg: &BleuConfig) -> BleuScore {
    bleu_lexemes(&reference.lexemes(), &candidate.lexemes(), cfg)
}

pub fn bleu_lexemes(reference: &[&str], candidate: &[&str], cfg: &BleuConfig) -> BleuScore {
    let stats = BleuStats::compute(reference, candidate, cfg.max_n);
    let flag = if reference.is_empty() {
        Some(BleuFlag::EmptyReference)
    } else if candidate.is_empty() {
        Some(BleuFlag::EmptyCandidate)
    } else {
        None
    };
    BleuScore { value: stats.score(cfg), stats, flag }
}
