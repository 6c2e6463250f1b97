//! Independent reference implementations used as test oracles.

#![allow(dead_code)]

pub mod corpus;

use rubyeval_core::minilang::{NodeId, NodeLabel, SyntaxTree, TreeBuilder};

/// Levenshtein distance from the full `(n+1) x (m+1)` table.
pub fn levenshtein_table<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + if a[i - 1] == b[j - 1] { 0 } else { 1 };
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Every sequence over `alphabet` with length at most `max_len`.
pub fn all_sequences<T: Clone>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for x in alphabet {
                let mut t: Vec<T> = s.clone();
                t.push(x.clone());
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Unlabeled ordered tree shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape(pub Vec<Shape>);

impl Shape {
    pub fn size(&self) -> usize {
        1 + self.0.iter().map(Shape::size).sum::<usize>()
    }
}

/// All ordered tree shapes with exactly `n` nodes.
pub fn shapes(n: usize) -> Vec<Shape> {
    if n == 0 {
        return Vec::new();
    }
    forests(n - 1).into_iter().map(Shape).collect()
}

fn forests(n: usize) -> Vec<Vec<Shape>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for head in shapes(first) {
            for tail in forests(n - first) {
                let mut f = vec![head.clone()];
                f.extend(tail);
                out.push(f);
            }
        }
    }
    out
}

/// Node labels used by the exhaustive tree tests: two values of one kind and
/// a second kind, so relabel costs of 0, 1 and 2 all occur.
pub const TREE_ALPHABET: [(NodeLabel, &str); 3] =
    [(NodeLabel::Name, "a"), (NodeLabel::Name, "b"), (NodeLabel::Literal, "a")];

/// Builds `shape` with labels taken from `labels` in preorder.
pub fn labeled(shape: &Shape, labels: &[(NodeLabel, &str)]) -> SyntaxTree {
    fn go(b: &mut TreeBuilder, s: &Shape, labels: &[(NodeLabel, &str)], next: &mut usize) -> NodeId {
        let (label, value) = labels[*next];
        *next += 1;
        let kids: Vec<NodeId> = s.0.iter().map(|c| go(b, c, labels, next)).collect();
        b.add(label, Some(value), kids)
    }
    let mut b = TreeBuilder::new();
    let mut next = 0;
    let root = go(&mut b, shape, labels, &mut next);
    b.finish(root)
}

/// Every labeling of every shape with `n` nodes over `TREE_ALPHABET`.
pub fn all_labeled_trees(n: usize) -> Vec<SyntaxTree> {
    let mut out = Vec::new();
    for shape in shapes(n) {
        for labels in all_sequences(&TREE_ALPHABET, n).into_iter().filter(|l| l.len() == n) {
            out.push(labeled(&shape, &labels));
        }
    }
    out
}

/// Preorder node list with ancestor relation, for mapping enumeration.
struct Flat {
    nodes: Vec<(NodeLabel, Option<String>)>,
    /// ancestor[i][j]: node i is a proper ancestor of node j.
    ancestor: Vec<Vec<bool>>,
}

fn flatten(t: &SyntaxTree) -> Flat {
    let mut nodes = Vec::new();
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut stack = vec![(t.root(), None)];
    while let Some((id, parent)) = stack.pop() {
        let me = nodes.len();
        let n = t.node(id);
        nodes.push((n.label, n.value.clone()));
        parents.push(parent);
        for &c in n.children.iter().rev() {
            stack.push((c, Some(me)));
        }
    }
    let k = nodes.len();
    let mut ancestor = vec![vec![false; k]; k];
    for j in 0..k {
        let mut p = parents[j];
        while let Some(i) = p {
            ancestor[i][j] = true;
            p = parents[i];
        }
    }
    Flat { nodes, ancestor }
}

fn relabel(a: &(NodeLabel, Option<String>), b: &(NodeLabel, Option<String>)) -> usize {
    if a.0 != b.0 {
        2
    } else if a.1 != b.1 {
        1
    } else {
        0
    }
}

/// Minimum cost over all Tai mappings (one-to-one, ancestor- and
/// order-preserving node correspondences).
pub fn brute_force_ted(a: &SyntaxTree, b: &SyntaxTree) -> usize {
    let (fa, fb) = (flatten(a), flatten(b));
    let mut best = fa.nodes.len() + fb.nodes.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; fb.nodes.len()];
    search(&fa, &fb, 0, &mut pairs, &mut used, &mut best);
    best
}

fn search(fa: &Flat, fb: &Flat, i: usize, pairs: &mut Vec<(usize, usize)>, used: &mut Vec<bool>, best: &mut usize) {
    if i == fa.nodes.len() {
        let mapped = pairs.len();
        let cost: usize = pairs.iter().map(|&(x, y)| relabel(&fa.nodes[x], &fb.nodes[y])).sum::<usize>()
            + (fa.nodes.len() - mapped)
            + (fb.nodes.len() - mapped);
        *best = (*best).min(cost);
        return;
    }
    search(fa, fb, i + 1, pairs, used, best);
    for j in 0..fb.nodes.len() {
        if used[j] {
            continue;
        }
        let consistent = pairs.iter().all(|&(x, y)| {
            fa.ancestor[x][i] == fb.ancestor[y][j] && fa.ancestor[i][x] == fb.ancestor[j][y] && (x < i) == (y < j)
        });
        if consistent {
            used[j] = true;
            pairs.push((i, j));
            search(fa, fb, i + 1, pairs, used, best);
            pairs.pop();
            used[j] = false;
        }
    }
}

/// ln Γ(x) for positive integers and half-integers, from exact products.
pub fn ln_gamma_half_integer(x: f64) -> f64 {
    let twice = (2.0 * x).round() as i64;
    assert!(twice >= 1 && (2.0 * x - twice as f64).abs() < 1e-12);
    let mut acc = 0.0f64;
    if twice % 2 == 0 {
        // Γ(n) = (n-1)!
        for k in 1..(twice / 2) {
            acc += (k as f64).ln();
        }
    } else {
        // Γ(1/2) = √π, Γ(x + 1) = x Γ(x)
        acc = 0.5 * std::f64::consts::PI.ln();
        let mut y = 0.5;
        while y < x - 1e-9 {
            acc += y.ln();
            y += 1.0;
        }
    }
    acc
}

/// Two-sided Student-t p-value by composite Simpson integration of the density
/// over `[0, |t|]`.
pub fn t_two_sided_p_by_integration(t: f64, df: f64) -> f64 {
    let t = t.abs();
    if t == 0.0 {
        return 1.0;
    }
    let log_norm = ln_gamma_half_integer((df + 1.0) / 2.0)
        - ln_gamma_half_integer(df / 2.0)
        - 0.5 * (df * std::f64::consts::PI).ln();
    let density = |x: f64| (log_norm - (df + 1.0) / 2.0 * (1.0 + x * x / df).ln()).exp();
    let steps = 200_000usize;
    let h = t / steps as f64;
    let mut sum = density(0.0) + density(t);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * density(k as f64 * h);
    }
    let half_mass = sum * h / 3.0;
    (1.0 - 2.0 * half_mass).clamp(0.0, 1.0)
}

/// Clipped matches and total candidate n-grams of order `n`, by removing each
/// matched n-gram from a list of the reference n-grams.
pub fn clipped_counts(reference: &[&str], candidate: &[&str], n: usize) -> (u64, u64) {
    let grams = |s: &[&str]| -> Vec<Vec<String>> {
        if s.len() < n {
            return Vec::new();
        }
        s.windows(n).map(|w| w.iter().map(|t| t.to_string()).collect()).collect()
    };
    let (mut pool, cand) = (grams(reference), grams(candidate));
    let mut matched = 0;
    for g in &cand {
        if let Some(pos) = pool.iter().position(|x| x == g) {
            pool.swap_remove(pos);
            matched += 1;
        }
    }
    (matched, cand.len() as u64)
}
