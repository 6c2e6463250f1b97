use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::metrics::{BleuConfig, BleuStats};
use crate::minilang::TokenSequence;

/// Seeded shuffles tried after the structured orders.
const SHUFFLE_ATTEMPTS: usize = 256;

/// How the candidate was cut into blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockStrategy {
    /// Cuts after `;`, `{` and `}`.
    Statement,
    /// Maximal runs that occur contiguously in the reference, with the
    /// unmatched runs between them.
    Matched,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Permutation {
    pub tokens: TokenSequence,
    /// `false` when no verified reordering was found and `tokens` is the
    /// original candidate.
    pub permuted: bool,
    pub strategy: Option<BlockStrategy>,
}

fn statement_blocks(lexemes: &[&str]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for (i, lx) in lexemes.iter().enumerate() {
        if lx.ends_with(';') || lx.ends_with('{') || lx.ends_with('}') {
            blocks.push((start, i + 1));
            start = i + 1;
        }
    }
    if start < lexemes.len() {
        blocks.push((start, lexemes.len()));
    }
    blocks
}

fn occurs_in(haystack: &[&str], needle: &[&str]) -> bool {
    haystack.windows(needle.len()).any(|w| w == needle)
}

fn matched_blocks(reference: &[&str], candidate: &[&str]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut i = 0;
    let mut gap_start = None;
    while i < candidate.len() {
        let mut len = 0;
        while i + len < candidate.len() && occurs_in(reference, &candidate[i..i + len + 1]) {
            len += 1;
        }
        if len == 0 {
            gap_start.get_or_insert(i);
            i += 1;
            continue;
        }
        if let Some(g) = gap_start.take() {
            blocks.push((g, i));
        }
        blocks.push((i, i + len));
        i += len;
    }
    if let Some(g) = gap_start {
        blocks.push((g, candidate.len()));
    }
    blocks
}

/// Reverse, every rotation, then every adjacent swap.
fn structured_orders(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    out.push((0..k).rev().collect());
    for r in 1..k {
        out.push((0..k).map(|i| (i + r) % k).collect());
    }
    for s in 0..k - 1 {
        let mut o: Vec<usize> = (0..k).collect();
        o.swap(s, s + 1);
        out.push(o);
    }
    out
}

fn apply<'a>(lexemes: &[&'a str], blocks: &[(usize, usize)], order: &[usize]) -> Vec<&'a str> {
    order.iter().flat_map(|&b| lexemes[blocks[b].0..blocks[b].1].iter().copied()).collect()
}

/// Reorders blocks of `candidate` so that its BLEU against `reference` is
/// unchanged.
///
/// Every emitted order is checked by recomputing the clipped n-gram counts
/// for orders `1..=cfg.max_n`, so BLEU is equal exactly under any brevity
/// penalty and zero policy. Returns the candidate unchanged (with
/// `permuted == false`) when no block order passes.
pub fn permute_preserving_bleu(
    reference: &TokenSequence,
    candidate: &TokenSequence,
    cfg: &BleuConfig,
    seed: u64,
) -> Permutation {
    let r = reference.lexemes();
    let c = candidate.lexemes();
    let target = BleuStats::compute(&r, &c, cfg.max_n);
    let verified = |p: &[&str]| p != c.as_slice() && BleuStats::compute(&r, p, cfg.max_n) == target;

    let segmentations =
        [(BlockStrategy::Statement, statement_blocks(&c)), (BlockStrategy::Matched, matched_blocks(&r, &c))];
    for (strategy, blocks) in &segmentations {
        if blocks.len() < 2 {
            continue;
        }
        for order in structured_orders(blocks.len()) {
            let p = apply(&c, blocks, &order);
            if verified(&p) {
                return found(p, candidate, *strategy);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (strategy, blocks) in &segmentations {
        if blocks.len() < 3 {
            continue;
        }
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        for _ in 0..SHUFFLE_ATTEMPTS {
            order.shuffle(&mut rng);
            let p = apply(&c, blocks, &order);
            if verified(&p) {
                return found(p, candidate, *strategy);
            }
        }
    }
    Permutation { tokens: candidate.clone(), permuted: false, strategy: None }
}

fn found(lexemes: Vec<&str>, candidate: &TokenSequence, strategy: BlockStrategy) -> Permutation {
    Permutation {
        tokens: TokenSequence::from_lexemes(&lexemes, candidate.mode),
        permuted: true,
        strategy: Some(strategy),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::{tokenize, TokenizeMode};

    fn ws(s: &str) -> TokenSequence {
        tokenize(s, TokenizeMode::Whitespace)
    }

    #[test]
    fn block_swap_example() {
        let p = permute_preserving_bleu(&ws("A B C D"), &ws("A B E C D"), &BleuConfig::with_max_n(2), 0);
        assert!(p.permuted);
        assert_eq!(p.tokens.joined(), "C D E A B");
        assert_eq!(p.strategy, Some(BlockStrategy::Matched));
    }

    #[test]
    fn single_block_is_identity() {
        let c = ws("A B C D");
        let p = permute_preserving_bleu(&c, &c, &BleuConfig::default(), 3);
        assert!(!p.permuted);
        assert_eq!(p.tokens, c);
    }

    #[test]
    fn segmentations() {
        assert_eq!(matched_blocks(&["A", "B", "C", "D"], &["A", "B", "E", "F", "C", "D"]), [(0, 2), (2, 4), (4, 6)]);
        assert_eq!(statement_blocks(&["a", ";", "{", "b", "}"]), [(0, 2), (2, 3), (3, 5)]);
    }
}
