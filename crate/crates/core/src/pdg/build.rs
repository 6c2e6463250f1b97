use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::dataflow::dependence_edges;
use super::label::{
    assigned_base, callee_name, capitalize, collect_uses, expr_bucket, expr_tag, predicate_label, TypeEnv,
};
use super::{DependenceGraph, Edge, EdgeKind, NodeKind, NotApplicable, PdgNode};
use crate::minilang::{NodeId, NodeLabel, SyntaxTree};

/// Builds the dependence graph of a single parsed method.
///
/// Node ids follow source order: entry, parameters, constructor initializer,
/// then body statements and predicates as they appear in the text.
pub fn build_pdg(tree: &SyntaxTree) -> Result<DependenceGraph, NotApplicable> {
    let root = tree.node(tree.root());
    if root.label != NodeLabel::Method {
        return Err(NotApplicable::NotAMethod);
    }
    let mut b = Builder {
        tree,
        env: TypeEnv::default(),
        nodes: Vec::new(),
        edges: Vec::new(),
        succ: Vec::new(),
        loops: Vec::new(),
    };
    let entry = b.add("entry".into(), NodeKind::Entry, BTreeSet::new(), BTreeSet::new());
    let mut flow = vec![entry];
    let mut body_nodes = 0usize;
    for &part in &root.children {
        let node = tree.node(part);
        match node.label {
            NodeLabel::Params => {
                for &param in &node.children {
                    let ty = tree.node(param).value.as_deref().unwrap_or("");
                    let name = value(tree, tree.node(param).children[0]);
                    b.env.declare(name, ty);
                    let n =
                        b.add(format!("input{}", capitalize(ty)), NodeKind::Statement, set([name]), BTreeSet::new());
                    b.link(entry, n, &flow);
                    flow = vec![n];
                }
            }
            NodeLabel::BaseCall => {
                let mut uses = BTreeSet::new();
                for &a in &node.children {
                    collect_uses(tree, a, &mut uses);
                }
                let keyword = node.value.as_deref().unwrap_or("base");
                let n = b.add(format!("call:{keyword}"), NodeKind::Statement, BTreeSet::new(), uses);
                b.link(entry, n, &flow);
                flow = vec![n];
                body_nodes += 1;
            }
            NodeLabel::Block => {
                let before = b.nodes.len();
                flow = b.statement(part, entry, flow);
                body_nodes += b.nodes.len() - before;
            }
            _ => {}
        }
    }
    if body_nodes == 0 {
        return Err(NotApplicable::EmptyBody);
    }
    let mut edges = b.edges;
    edges.extend(dependence_edges(&b.nodes, &b.succ));
    Ok(DependenceGraph::from_parts(b.nodes, edges))
}

fn value(tree: &SyntaxTree, id: NodeId) -> &str {
    tree.node(id).value.as_deref().unwrap_or("")
}

fn set<'a>(items: impl IntoIterator<Item = &'a str>) -> BTreeSet<String> {
    items.into_iter().map(|s| s.to_string()).collect()
}

struct LoopFrame {
    continue_to: u32,
    breaks: Vec<u32>,
}

struct Builder<'t> {
    tree: &'t SyntaxTree,
    env: TypeEnv,
    nodes: Vec<PdgNode>,
    edges: Vec<Edge>,
    succ: Vec<Vec<u32>>,
    loops: Vec<LoopFrame>,
}

impl Builder<'_> {
    fn add(&mut self, label: String, kind: NodeKind, defs: BTreeSet<String>, uses: BTreeSet<String>) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(PdgNode { id, label, kind, defs, uses });
        self.succ.push(Vec::new());
        id
    }

    /// Control edge from `parent`, CFG edges from every node in `preds`.
    fn link(&mut self, parent: u32, n: u32, preds: &[u32]) {
        self.edges.push(Edge { from: parent, to: n, kind: EdgeKind::Control });
        for &p in preds {
            self.succ[p as usize].push(n);
        }
    }

    fn uses_of(&self, id: NodeId) -> BTreeSet<String> {
        let mut uses = BTreeSet::new();
        collect_uses(self.tree, id, &mut uses);
        uses
    }

    /// Lowers one statement; returns the nodes that fall through to whatever
    /// follows it.
    fn statement(&mut self, id: NodeId, parent: u32, preds: Vec<u32>) -> Vec<u32> {
        let tree = self.tree;
        let node = tree.node(id);
        let kids = &node.children;
        match node.label {
            NodeLabel::Block => {
                let mut flow = preds;
                for &s in kids {
                    flow = self.statement(s, parent, flow);
                }
                flow
            }
            NodeLabel::If => {
                let label = predicate_label(tree, kids[0], &self.env);
                let uses = self.uses_of(kids[0]);
                let c = self.add(label, NodeKind::Predicate, BTreeSet::new(), uses);
                self.link(parent, c, &preds);
                let mut exits = self.statement(kids[1], c, vec![c]);
                match kids.get(2) {
                    Some(&e) => exits.extend(self.statement(e, c, vec![c])),
                    None => exits.push(c),
                }
                exits
            }
            NodeLabel::While => {
                let label = predicate_label(tree, kids[0], &self.env);
                let uses = self.uses_of(kids[0]);
                let c = self.add(label, NodeKind::Predicate, BTreeSet::new(), uses);
                self.link(parent, c, &preds);
                self.loop_body(c, c, kids[1])
            }
            NodeLabel::For => {
                let mut flow = preds;
                if tree.node(kids[0]).label != NodeLabel::Empty {
                    let init = self.simple(kids[0]);
                    self.link(parent, init, &flow);
                    flow = vec![init];
                }
                let label = predicate_label(tree, kids[1], &self.env);
                let uses = self.uses_of(kids[1]);
                let c = self.add(label, NodeKind::Predicate, BTreeSet::new(), uses);
                self.link(parent, c, &flow);
                let mut continue_to = c;
                if tree.node(kids[2]).label != NodeLabel::Empty {
                    let step = self.simple(kids[2]);
                    self.link(c, step, &[]);
                    self.succ[step as usize].push(c);
                    continue_to = step;
                }
                self.loop_body(c, continue_to, kids[3])
            }
            NodeLabel::Foreach => {
                let ty = node.value.as_deref().unwrap_or("");
                let var = value(tree, kids[0]);
                self.env.declare(var, ty);
                let uses = self.uses_of(kids[1]);
                let c = self.add(format!("foreach{}", capitalize(ty)), NodeKind::Predicate, set([var]), uses);
                self.link(parent, c, &preds);
                self.loop_body(c, c, kids[2])
            }
            NodeLabel::Return | NodeLabel::Throw => {
                let keyword = if node.label == NodeLabel::Return { "return" } else { "throw" };
                let (label, uses) = match kids.first() {
                    Some(&e) => (format!("{keyword}{}", expr_tag(tree, e, &self.env)), self.uses_of(e)),
                    None => (keyword.to_string(), BTreeSet::new()),
                };
                let n = self.add(label, NodeKind::Statement, BTreeSet::new(), uses);
                self.link(parent, n, &preds);
                Vec::new()
            }
            NodeLabel::Break => {
                let n = self.add("break".into(), NodeKind::Statement, BTreeSet::new(), BTreeSet::new());
                self.link(parent, n, &preds);
                if let Some(frame) = self.loops.last_mut() {
                    frame.breaks.push(n);
                }
                Vec::new()
            }
            NodeLabel::Continue => {
                let n = self.add("continue".into(), NodeKind::Statement, BTreeSet::new(), BTreeSet::new());
                self.link(parent, n, &preds);
                if let Some(target) = self.loops.last().map(|f| f.continue_to) {
                    self.succ[n as usize].push(target);
                }
                Vec::new()
            }
            _ => {
                let n = self.simple(id);
                self.link(parent, n, &preds);
                vec![n]
            }
        }
    }

    fn loop_body(&mut self, predicate: u32, continue_to: u32, body: NodeId) -> Vec<u32> {
        self.loops.push(LoopFrame { continue_to, breaks: Vec::new() });
        let exits = self.statement(body, predicate, vec![predicate]);
        for e in exits {
            self.succ[e as usize].push(continue_to);
        }
        let frame = self.loops.pop().expect("pushed above");
        let mut exits = vec![predicate];
        exits.extend(frame.breaks);
        exits
    }

    /// Node for a declaration, assignment or call statement (no edges yet).
    fn simple(&mut self, id: NodeId) -> u32 {
        let tree = self.tree;
        let node = tree.node(id);
        match node.label {
            NodeLabel::VarDecl => {
                let ty = node.value.as_deref().unwrap_or("");
                let name = value(tree, node.children[0]);
                let mut label = format!("declare{}", capitalize(ty));
                let mut uses = BTreeSet::new();
                if let Some(&init) = node.children.get(1) {
                    label.push_str("Equal");
                    label.push_str(&expr_tag(tree, init, &self.env));
                    uses = self.uses_of(init);
                }
                self.env.declare(name, ty);
                self.add(label, NodeKind::Statement, set([name]), uses)
            }
            NodeLabel::Assign => {
                let (target, rhs) = (node.children[0], node.children[1]);
                let ty = match tree.node(target).label {
                    NodeLabel::Name if self.env.contains(value(tree, target)) => expr_bucket(tree, target, &self.env),
                    _ => expr_bucket(tree, rhs, &self.env),
                };
                let label = format!("{ty}Equal{}", expr_tag(tree, rhs, &self.env));
                let mut uses = self.uses_of(rhs);
                if tree.node(target).label != NodeLabel::Name {
                    collect_uses(tree, target, &mut uses);
                }
                let defs: BTreeSet<String> = assigned_base(tree, target).into_iter().collect();
                self.add(label, NodeKind::Statement, defs, uses)
            }
            NodeLabel::Call => {
                let label = format!("call:{}", callee_name(tree, id));
                let uses = self.uses_of(id);
                self.add(label, NodeKind::Statement, BTreeSet::new(), uses)
            }
            _ => {
                let label = String::from("stmt");
                let uses = self.uses_of(id);
                self.add(label, NodeKind::Statement, BTreeSet::new(), uses)
            }
        }
    }
}
