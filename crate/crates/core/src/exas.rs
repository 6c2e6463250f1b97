//! Exas structural features of dependence graphs.
//!
//! A graph is characterized by two kinds of features:
//!
//! * n-paths: the label sequence along a simple directed path of `n` nodes,
//! * (p,q)-nodes: a node label together with its in-degree `p` and
//!   out-degree `q`.
//!
//! The entry node and the edges touching it are ignored. Two graphs are
//! compared through their occurrence-count vectors: the normalized similarity
//! is `1 - L1 / mass`, where `mass` is the total count over both vectors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pdg::DependenceGraph;

/// Path length used when none is given.
pub const DEFAULT_MAX_PATH_LENGTH: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    /// Labels along a simple directed path, in path order.
    Path(Vec<String>),
    PqNode {
        label: String,
        p: u32,
        q: u32,
    },
}

impl Feature {
    pub fn path<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Feature::Path(labels.into_iter().map(Into::into).collect())
    }

    pub fn pq(label: impl Into<String>, p: u32, q: u32) -> Self {
        Feature::PqNode { label: label.into(), p, q }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::Path(labels) => {
                for (i, l) in labels.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" > ")?;
                    }
                    f.write_str(l)?;
                }
                Ok(())
            }
            Feature::PqNode { label, p, q } => write!(f, "{label}-{p}-{q}"),
        }
    }
}

/// Sparse occurrence counts; absent features count zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureVector {
    counts: BTreeMap<Feature, u64>,
}

impl FeatureVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `feature`. Zero counts are not stored.
    pub fn add(&mut self, feature: Feature, count: u64) {
        if count > 0 {
            *self.counts.entry(feature).or_insert(0) += count;
        }
    }

    pub fn get(&self, feature: &Feature) -> u64 {
        self.counts.get(feature).copied().unwrap_or(0)
    }

    /// Number of distinct features present.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of all counts.
    pub fn mass(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Feature, u64)> + '_ {
        self.counts.iter().map(|(f, &c)| (f, c))
    }
}

impl FromIterator<(Feature, u64)> for FeatureVector {
    fn from_iter<I: IntoIterator<Item = (Feature, u64)>>(iter: I) -> Self {
        let mut v = FeatureVector::new();
        for (f, c) in iter {
            v.add(f, c);
        }
        v
    }
}

/// Positions of features in a dense layout shared by a set of vectors.
#[derive(Debug, Clone, Default)]
pub struct FeatureIndex {
    positions: BTreeMap<Feature, usize>,
}

impl FeatureIndex {
    /// Index over the union of the features of `vectors`, in feature order.
    pub fn union<'a>(vectors: impl IntoIterator<Item = &'a FeatureVector>) -> Self {
        let mut positions = BTreeMap::new();
        for v in vectors {
            for (f, _) in v.iter() {
                positions.entry(f.clone()).or_insert(0);
            }
        }
        for (i, slot) in positions.values_mut().enumerate() {
            *slot = i;
        }
        FeatureIndex { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, feature: &Feature) -> Option<usize> {
        self.positions.get(feature).copied()
    }

    pub fn features(&self) -> impl Iterator<Item = &Feature> + '_ {
        self.positions.keys()
    }

    /// Dense counts of `v`; features outside the index are dropped.
    pub fn dense(&self, v: &FeatureVector) -> Vec<u64> {
        let mut out = vec![0; self.positions.len()];
        for (f, c) in v.iter() {
            if let Some(i) = self.position(f) {
                out[i] = c;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExasError {
    /// Both vectors are empty, so the normalized distance is undefined.
    EmptyVectors,
}

impl fmt::Display for ExasError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExasError::EmptyVectors => f.write_str("both feature vectors are empty"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExasError {}

/// Counts the n-paths (`1 <= n <= max_path_length`) and (p,q)-nodes of `g`.
///
/// Paths are node sequences: parallel edges of different kinds between the
/// same two nodes yield one path, while degrees count every edge.
pub fn extract_features(g: &DependenceGraph, max_path_length: usize) -> FeatureVector {
    let max_len = max_path_length.max(1);
    let n = g.nodes().len();
    let entry = g.entry();
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut in_deg = vec![0u32; n];
    let mut out_deg = vec![0u32; n];
    for e in g.edges() {
        if e.from == entry || e.to == entry {
            continue;
        }
        out_deg[e.from as usize] += 1;
        in_deg[e.to as usize] += 1;
        if e.from != e.to && !succ[e.from as usize].contains(&e.to) {
            succ[e.from as usize].push(e.to);
        }
    }

    let mut v = FeatureVector::new();
    let mut path = Vec::with_capacity(max_len);
    for node in g.nodes() {
        if node.id == entry {
            continue;
        }
        v.add(Feature::pq(node.label.clone(), in_deg[node.id as usize], out_deg[node.id as usize]), 1);
        path.clear();
        path.push(node.id);
        walk(g, &succ, &mut path, max_len, &mut v);
    }
    v
}

fn walk(g: &DependenceGraph, succ: &[Vec<u32>], path: &mut Vec<u32>, max_len: usize, v: &mut FeatureVector) {
    v.add(Feature::Path(path.iter().map(|&id| g.node(id).label.clone()).collect()), 1);
    if path.len() == max_len {
        return;
    }
    let last = *path.last().expect("path is never empty");
    for &next in &succ[last as usize] {
        if !path.contains(&next) {
            path.push(next);
            walk(g, succ, path, max_len, v);
            path.pop();
        }
    }
}

/// `(L1 distance, total mass)` of two count vectors over their union index.
pub fn vector_distance(v1: &FeatureVector, v2: &FeatureVector) -> Result<(u64, u64), ExasError> {
    let mass = v1.mass() + v2.mass();
    if mass == 0 {
        return Err(ExasError::EmptyVectors);
    }
    let index = FeatureIndex::union([v1, v2]);
    let distance = index.dense(v1).into_iter().zip(index.dense(v2)).map(|(a, b)| a.abs_diff(b)).sum();
    Ok((distance, mass))
}

/// `1 - L1 / mass`, in `[0, 1]`.
pub fn similarity(v1: &FeatureVector, v2: &FeatureVector) -> Result<f64, ExasError> {
    let (distance, mass) = vector_distance(v1, v2)?;
    Ok(1.0 - distance as f64 / mass as f64)
}
