//! Program dependence graphs over parsed MiniLang methods.
//!
//! Nodes are the entry vertex, one definition node per parameter, one node per
//! simple statement and one per loop or branch predicate. Edges are
//! control dependences (from structural nesting), data dependences (def-use
//! chains from reaching definitions) and output dependences (def-def chains,
//! where a definition reaches a later redefinition of the same variable).
//!
//! Node labels never mention local variable names, so consistently renamed
//! code produces identical graphs.

mod build;
mod dataflow;
mod label;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

pub use build::build_pdg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Entry,
    Statement,
    Predicate,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Entry => "entry",
            NodeKind::Statement => "statement",
            NodeKind::Predicate => "predicate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Control,
    /// Def-use: a variable defined at the source is read at the target.
    Data,
    /// Def-def: a definition at the source reaches a redefinition at the target.
    Output,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Control => "control",
            EdgeKind::Data => "data",
            EdgeKind::Output => "output",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdgNode {
    pub id: u32,
    pub label: String,
    pub kind: NodeKind,
    pub defs: BTreeSet<String>,
    pub uses: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub kind: EdgeKind,
}

/// Why a tree has no dependence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotApplicable {
    /// The method body holds no statements.
    EmptyBody,
    /// The tree is not a single method declaration.
    NotAMethod,
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotApplicable::EmptyBody => f.write_str("method body has no statements"),
            NotApplicable::NotAMethod => f.write_str("tree is not a single method"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotApplicable {}

/// Directed labeled multigraph; node 0 is always the entry node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceGraph {
    nodes: Vec<PdgNode>,
    edges: Vec<Edge>,
}

impl DependenceGraph {
    /// Assembles a graph from parts. Edges are sorted and deduplicated.
    ///
    /// # Panics
    /// If node ids are not `0..n` in order, node 0 is not the only entry, or
    /// an edge refers to a missing node.
    pub fn from_parts(nodes: Vec<PdgNode>, mut edges: Vec<Edge>) -> Self {
        for (i, n) in nodes.iter().enumerate() {
            assert_eq!(n.id as usize, i, "node ids must be dense and ordered");
            assert_eq!(n.kind == NodeKind::Entry, i == 0, "node 0 must be the sole entry");
        }
        for e in &edges {
            assert!((e.from as usize) < nodes.len() && (e.to as usize) < nodes.len(), "edge endpoint out of range");
        }
        edges.sort();
        edges.dedup();
        DependenceGraph { nodes, edges }
    }

    pub fn nodes(&self) -> &[PdgNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: u32) -> &PdgNode {
        &self.nodes[id as usize]
    }

    pub fn entry(&self) -> u32 {
        0
    }

    /// Vertex count plus edge count.
    pub fn size(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    pub fn edges_of_kind(&self, kind: EdgeKind) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.kind == kind)
    }

    pub fn has_edge(&self, from: u32, to: u32, kind: EdgeKind) -> bool {
        self.edges.contains(&Edge { from, to, kind })
    }

    /// Ids of the nodes whose label equals `label`, in id order.
    pub fn find(&self, label: &str) -> Vec<u32> {
        self.nodes.iter().filter(|n| n.label == label).map(|n| n.id).collect()
    }

    /// Graphviz rendering with node label/kind and edge kind attributes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph pdg {\n");
        for n in &self.nodes {
            let shape = match n.kind {
                NodeKind::Entry => "doublecircle",
                NodeKind::Statement => "box",
                NodeKind::Predicate => "diamond",
            };
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\", kind={}, shape={}];",
                n.id,
                escape(&n.label),
                n.kind.as_str(),
                shape
            );
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Control => "solid",
                EdgeKind::Data => "dashed",
                EdgeKind::Output => "dotted",
            };
            let _ = writeln!(out, "  n{} -> n{} [kind={}, style={}];", e.from, e.to, e.kind.as_str(), style);
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}
