use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Syntactic category of a [`SyntaxNode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    /// More than one method declaration.
    Unit,
    /// value = return type (absent for constructors); children = Name, Params,
    /// optional BaseCall, Block.
    Method,
    Params,
    /// value = declared type; child = Name.
    Param,
    Block,
    /// children = condition, then-branch, optional else-branch.
    If,
    While,
    /// children = init, condition, step, body; absent parts are `Empty`.
    For,
    /// value = element type; children = Name, collection, body.
    Foreach,
    Return,
    Throw,
    Break,
    Continue,
    Assign,
    /// value = declared type; children = Name, optional initializer.
    VarDecl,
    /// children = callee, then arguments.
    Call,
    /// value = member name; child = object expression.
    FieldAccess,
    Index,
    BinaryOp,
    UnaryOp,
    /// value = constructed type; children = arguments.
    New,
    Name,
    Literal,
    /// Constructor initializer `: base(..)` / `: this(..)`; value = keyword.
    BaseCall,
    Empty,
}

impl NodeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeLabel::Unit => "Unit",
            NodeLabel::Method => "Method",
            NodeLabel::Params => "Params",
            NodeLabel::Param => "Param",
            NodeLabel::Block => "Block",
            NodeLabel::If => "If",
            NodeLabel::While => "While",
            NodeLabel::For => "For",
            NodeLabel::Foreach => "Foreach",
            NodeLabel::Return => "Return",
            NodeLabel::Throw => "Throw",
            NodeLabel::Break => "Break",
            NodeLabel::Continue => "Continue",
            NodeLabel::Assign => "Assign",
            NodeLabel::VarDecl => "VarDecl",
            NodeLabel::Call => "Call",
            NodeLabel::FieldAccess => "FieldAccess",
            NodeLabel::Index => "Index",
            NodeLabel::BinaryOp => "BinaryOp",
            NodeLabel::UnaryOp => "UnaryOp",
            NodeLabel::New => "New",
            NodeLabel::Name => "Name",
            NodeLabel::Literal => "Literal",
            NodeLabel::BaseCall => "BaseCall",
            NodeLabel::Empty => "Empty",
        }
    }

    /// Statement-level labels (the ones a block can hold directly).
    pub fn is_statement(self) -> bool {
        matches!(
            self,
            NodeLabel::Block
                | NodeLabel::If
                | NodeLabel::While
                | NodeLabel::For
                | NodeLabel::Foreach
                | NodeLabel::Return
                | NodeLabel::Throw
                | NodeLabel::Break
                | NodeLabel::Continue
                | NodeLabel::Assign
                | NodeLabel::VarDecl
                | NodeLabel::Call
        )
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyntaxNode {
    pub label: NodeLabel,
    pub value: Option<String>,
    pub children: Vec<NodeId>,
}

/// Ordered labeled tree stored in an arena.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyntaxTree {
    nodes: Vec<SyntaxNode>,
    root: NodeId,
}

impl SyntaxTree {
    /// Builds a tree from an arena; `root` must index into `nodes`.
    pub fn from_parts(nodes: Vec<SyntaxNode>, root: NodeId) -> Self {
        assert!(root.index() < nodes.len(), "root out of bounds");
        SyntaxTree { nodes, root }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &SyntaxNode {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> &[SyntaxNode] {
        &self.nodes
    }

    /// Number of nodes reachable from the root.
    pub fn size(&self) -> usize {
        self.subtree_size(self.root)
    }

    pub fn subtree_size(&self, id: NodeId) -> usize {
        let mut count = 0;
        let mut stack = alloc::vec![id];
        while let Some(n) = stack.pop() {
            count += 1;
            stack.extend(self.node(n).children.iter().copied());
        }
        count
    }

    /// Node ids in post-order (children left to right, then the parent).
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = alloc::vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                out.push(id);
            } else {
                stack.push((id, true));
                for &c in self.node(id).children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Structural equality of the trees rooted at `root` (arena layout ignored).
    pub fn isomorphic(&self, other: &SyntaxTree) -> bool {
        fn eq(a: &SyntaxTree, x: NodeId, b: &SyntaxTree, y: NodeId) -> bool {
            let (nx, ny) = (a.node(x), b.node(y));
            nx.label == ny.label
                && nx.value == ny.value
                && nx.children.len() == ny.children.len()
                && nx.children.iter().zip(&ny.children).all(|(&cx, &cy)| eq(a, cx, b, cy))
        }
        eq(self, self.root, other, other.root)
    }

    /// True if any reachable node carries `label`.
    pub fn contains_label(&self, label: NodeLabel) -> bool {
        self.postorder().into_iter().any(|id| self.node(id).label == label)
    }

    /// S-expression rendering, e.g. `(Method (Name f) (Params) (Block))`.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(self.root, &mut out);
        out
    }

    fn write_sexpr(&self, id: NodeId, out: &mut String) {
        let node = self.node(id);
        out.push('(');
        out.push_str(node.label.as_str());
        if let Some(v) = &node.value {
            out.push(' ');
            out.push_str(v);
        }
        for &c in &node.children {
            out.push(' ');
            self.write_sexpr(c, out);
        }
        out.push(')');
    }
}

/// Incremental arena builder used by the parser and by tests.
#[derive(Debug, Default, Clone)]
pub struct TreeBuilder {
    nodes: Vec<SyntaxNode>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, label: NodeLabel, value: Option<&str>, children: Vec<NodeId>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(SyntaxNode { label, value: value.map(String::from), children });
        id
    }

    pub fn nodes(&self) -> &[SyntaxNode] {
        &self.nodes
    }

    pub fn leaf(&mut self, label: NodeLabel, value: &str) -> NodeId {
        self.add(label, Some(value), Vec::new())
    }

    pub fn finish(self, root: NodeId) -> SyntaxTree {
        SyntaxTree::from_parts(self.nodes, root)
    }
}
