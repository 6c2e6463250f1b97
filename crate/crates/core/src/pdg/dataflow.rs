//! Reaching definitions over the statement-level control-flow graph.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Edge, EdgeKind, PdgNode};

/// Data and output dependence edges implied by the CFG `succ` (indexed by
/// node id, node 0 is the start).
pub(super) fn dependence_edges(nodes: &[PdgNode], succ: &[Vec<u32>]) -> Vec<Edge> {
    let mut defs: Vec<(u32, &str)> = Vec::new();
    for n in nodes {
        for v in &n.defs {
            defs.push((n.id, v.as_str()));
        }
    }
    let gen: Vec<BTreeSet<usize>> = nodes
        .iter()
        .map(|n| defs.iter().enumerate().filter(|(_, (owner, _))| *owner == n.id).map(|(i, _)| i).collect())
        .collect();
    let kill: Vec<BTreeSet<usize>> = nodes
        .iter()
        .map(|n| {
            defs.iter()
                .enumerate()
                .filter(|(_, (owner, v))| *owner != n.id && n.defs.contains(*v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
    for (from, targets) in succ.iter().enumerate() {
        for &to in targets {
            preds[to as usize].push(from as u32);
        }
    }

    let mut reach_in: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes.len()];
    let mut reach_out: Vec<BTreeSet<usize>> = gen.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for n in 0..nodes.len() {
            let mut input = BTreeSet::new();
            for &p in &preds[n] {
                input.extend(reach_out[p as usize].iter().copied());
            }
            let mut output: BTreeSet<usize> = input.difference(&kill[n]).copied().collect();
            output.extend(gen[n].iter().copied());
            if output != reach_out[n] {
                reach_out[n] = output;
                changed = true;
            }
            reach_in[n] = input;
        }
    }

    let mut edges = Vec::new();
    for n in nodes {
        for &d in &reach_in[n.id as usize] {
            let (owner, var) = defs[d];
            if n.uses.contains(var) {
                edges.push(Edge { from: owner, to: n.id, kind: EdgeKind::Data });
            }
            if n.defs.contains(var) {
                edges.push(Edge { from: owner, to: n.id, kind: EdgeKind::Output });
            }
        }
    }
    edges
}
