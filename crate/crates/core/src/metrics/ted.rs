//! Ordered tree edit distance.
//!
//! Costs: delete 1, insert 1, relabel 0 for an identical node, 1 for the same
//! kind with a different value and 2 across kinds (a delete plus an insert).
//! Moves are not an operation of their own.

use alloc::vec;
use alloc::vec::Vec;

use crate::minilang::{NodeId, SyntaxNode, SyntaxTree};

/// Trees larger than this (on either side) use the top-down bound.
pub const DEFAULT_EXACT_LIMIT: usize = 200;

pub fn rename_cost(a: &SyntaxNode, b: &SyntaxNode) -> usize {
    if a.label != b.label {
        2
    } else if a.value != b.value {
        1
    } else {
        0
    }
}

struct Postorder<'t> {
    nodes: Vec<&'t SyntaxNode>,
    /// 1-based index of the leftmost leaf below each node (1-based slots).
    leftmost: Vec<usize>,
    keyroots: Vec<usize>,
}

impl<'t> Postorder<'t> {
    fn new(tree: &'t SyntaxTree) -> Self {
        let order = tree.postorder();
        let mut position = vec![0usize; tree.nodes().len()];
        for (i, id) in order.iter().enumerate() {
            position[id.index()] = i + 1;
        }
        let mut nodes = vec![tree.node(tree.root()); order.len() + 1];
        let mut leftmost = vec![0usize; order.len() + 1];
        for (i, &id) in order.iter().enumerate() {
            let slot = i + 1;
            nodes[slot] = tree.node(id);
            leftmost[slot] = match tree.node(id).children.first() {
                Some(&c) => leftmost[position[c.index()]],
                None => slot,
            };
        }
        // a keyroot is the highest node sharing its leftmost leaf
        let mut highest = vec![0usize; order.len() + 1];
        for slot in 1..=order.len() {
            highest[leftmost[slot]] = slot;
        }
        let mut keyroots: Vec<usize> = highest.into_iter().filter(|&s| s > 0).collect();
        keyroots.sort_unstable();
        Postorder { nodes, leftmost, keyroots }
    }

    fn len(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Exact edit distance (Zhang and Shasha's keyroot dynamic program).
pub fn tree_edit_distance(a: &SyntaxTree, b: &SyntaxTree) -> usize {
    let (pa, pb) = (Postorder::new(a), Postorder::new(b));
    let (n, m) = (pa.len(), pb.len());
    let mut td = vec![vec![0usize; m + 1]; n + 1];
    let mut fd = vec![vec![0usize; m + 2]; n + 2];
    for &i in &pa.keyroots {
        for &j in &pb.keyroots {
            let (li, lj) = (pa.leftmost[i], pb.leftmost[j]);
            // fd[x][y]: forest l(i)..l(i)+x-1 against l(j)..l(j)+y-1
            fd[0][0] = 0;
            for x in 1..=(i - li + 1) {
                fd[x][0] = fd[x - 1][0] + 1;
            }
            for y in 1..=(j - lj + 1) {
                fd[0][y] = fd[0][y - 1] + 1;
            }
            for x in 1..=(i - li + 1) {
                let i1 = li + x - 1;
                for y in 1..=(j - lj + 1) {
                    let j1 = lj + y - 1;
                    let del = fd[x - 1][y] + 1;
                    let ins = fd[x][y - 1] + 1;
                    if pa.leftmost[i1] == li && pb.leftmost[j1] == lj {
                        let ren = fd[x - 1][y - 1] + rename_cost(pa.nodes[i1], pb.nodes[j1]);
                        fd[x][y] = del.min(ins).min(ren);
                        td[i1][j1] = fd[x][y];
                    } else {
                        let px = pa.leftmost[i1] - li;
                        let py = pb.leftmost[j1] - lj;
                        fd[x][y] = del.min(ins).min(fd[px][py] + td[i1][j1]);
                    }
                }
            }
        }
    }
    td[n][m]
}

/// Upper bound on the edit distance that maps root to root and aligns child
/// lists by sequence edit distance, recursing into matched children.
pub fn top_down_distance(a: &SyntaxTree, b: &SyntaxTree) -> usize {
    top_down(a, a.root(), b, b.root())
}

fn top_down(a: &SyntaxTree, x: NodeId, b: &SyntaxTree, y: NodeId) -> usize {
    let (nx, ny) = (a.node(x), b.node(y));
    let cost = rename_cost(nx, ny);
    let (cx, cy) = (&nx.children, &ny.children);
    let del: Vec<usize> = cx.iter().map(|&c| a.subtree_size(c)).collect();
    let ins: Vec<usize> = cy.iter().map(|&c| b.subtree_size(c)).collect();
    let mut prev = vec![0usize; cy.len() + 1];
    for k in 1..=cy.len() {
        prev[k] = prev[k - 1] + ins[k - 1];
    }
    let mut cur = vec![0usize; cy.len() + 1];
    for i in 1..=cx.len() {
        cur[0] = prev[0] + del[i - 1];
        for j in 1..=cy.len() {
            let matched = prev[j - 1] + top_down(a, cx[i - 1], b, cy[j - 1]);
            cur[j] = matched.min(prev[j] + del[i - 1]).min(cur[j - 1] + ins[j - 1]);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    cost + prev[cy.len()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TedResult {
    pub distance: usize,
    /// The distance is the top-down upper bound rather than the exact value.
    pub approximate: bool,
}

/// Exact distance when both trees have at most `exact_limit` nodes, else the
/// top-down bound.
pub fn ted(a: &SyntaxTree, b: &SyntaxTree, exact_limit: usize) -> TedResult {
    if a.size() <= exact_limit && b.size() <= exact_limit {
        TedResult { distance: tree_edit_distance(a, b), approximate: false }
    } else {
        TedResult { distance: top_down_distance(a, b), approximate: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrsScore {
    pub value: f64,
    pub distance: usize,
    pub approximate: bool,
}

/// `1 - TED / (size(reference) + size(candidate))`.
pub fn trs(reference: &SyntaxTree, candidate: &SyntaxTree) -> TrsScore {
    trs_with_limit(reference, candidate, DEFAULT_EXACT_LIMIT)
}

pub fn trs_with_limit(reference: &SyntaxTree, candidate: &SyntaxTree, exact_limit: usize) -> TrsScore {
    let TedResult { distance, approximate } = ted(reference, candidate, exact_limit);
    let total = reference.size() + candidate.size();
    TrsScore { value: (1.0 - distance as f64 / total as f64).clamp(0.0, 1.0), distance, approximate }
}
