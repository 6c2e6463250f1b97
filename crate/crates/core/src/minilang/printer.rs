use alloc::string::String;

use super::tree::{NodeId, NodeLabel, SyntaxTree};

/// Renders a tree back to MiniLang source.
///
/// Compound operands are always parenthesized, so the output reparses to an
/// isomorphic tree. Modifiers and `throws` clauses are not stored in the tree
/// and are not printed. An `If` whose unbraced then-branch is itself an
/// else-less `If` cannot be expressed without braces and reparses differently.
pub fn pretty_print(tree: &SyntaxTree) -> String {
    let mut p = Printer { tree, out: String::new(), indent: 0 };
    let root = tree.node(tree.root());
    match root.label {
        NodeLabel::Unit => {
            for (i, &m) in root.children.iter().enumerate() {
                if i > 0 {
                    p.out.push('\n');
                }
                p.method(m);
            }
        }
        NodeLabel::Method => p.method(tree.root()),
        _ if root.label.is_statement() => p.statement(tree.root()),
        _ => p.expr(tree.root()),
    }
    p.out
}

struct Printer<'a> {
    tree: &'a SyntaxTree,
    out: String,
    indent: usize,
}

impl<'a> Printer<'a> {
    fn value(&self, id: NodeId) -> &'a str {
        let tree: &'a SyntaxTree = self.tree;
        tree.node(id).value.as_deref().unwrap_or("")
    }

    fn children(&self, id: NodeId) -> &'a [NodeId] {
        let tree: &'a SyntaxTree = self.tree;
        &tree.node(id).children
    }

    fn line_start(&mut self) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
    }

    fn method(&mut self, id: NodeId) {
        let node = self.tree.node(id);
        self.line_start();
        if let Some(ret) = &node.value {
            self.out.push_str(ret);
            self.out.push(' ');
        }
        for &c in &node.children {
            match self.tree.node(c).label {
                NodeLabel::Name => self.out.push_str(self.value(c)),
                NodeLabel::Params => {
                    self.out.push('(');
                    for (i, &param) in self.children(c).iter().enumerate() {
                        if i > 0 {
                            self.out.push_str(", ");
                        }
                        self.out.push_str(self.value(param));
                        self.out.push(' ');
                        let name = self.children(param)[0];
                        self.out.push_str(self.value(name));
                    }
                    self.out.push(')');
                }
                NodeLabel::BaseCall => {
                    self.out.push_str(" : ");
                    self.out.push_str(self.value(c));
                    self.args(self.children(c));
                }
                _ => {
                    self.out.push(' ');
                    self.block(c);
                    self.out.push('\n');
                }
            }
        }
    }

    fn block(&mut self, id: NodeId) {
        self.out.push_str("{\n");
        self.indent += 1;
        for &s in self.children(id) {
            self.line_start();
            self.statement(s);
            self.out.push('\n');
        }
        self.indent -= 1;
        self.line_start();
        self.out.push('}');
    }

    fn body(&mut self, id: NodeId) {
        if self.tree.node(id).label == NodeLabel::Block {
            self.out.push(' ');
            self.block(id);
        } else {
            self.out.push('\n');
            self.indent += 1;
            self.line_start();
            self.statement(id);
            self.indent -= 1;
        }
    }

    fn statement(&mut self, id: NodeId) {
        let node = self.tree.node(id);
        let kids = &node.children;
        match node.label {
            NodeLabel::Block => self.block(id),
            NodeLabel::If => {
                self.out.push_str("if (");
                self.expr(kids[0]);
                self.out.push(')');
                self.body(kids[1]);
                if let Some(&e) = kids.get(2) {
                    if self.tree.node(kids[1]).label == NodeLabel::Block {
                        self.out.push_str(" else");
                    } else {
                        self.out.push('\n');
                        self.line_start();
                        self.out.push_str("else");
                    }
                    self.body(e);
                }
            }
            NodeLabel::While => {
                self.out.push_str("while (");
                self.expr(kids[0]);
                self.out.push(')');
                self.body(kids[1]);
            }
            NodeLabel::For => {
                self.out.push_str("for (");
                self.simple(kids[0]);
                self.out.push_str("; ");
                if self.tree.node(kids[1]).label != NodeLabel::Empty {
                    self.expr(kids[1]);
                }
                self.out.push_str("; ");
                self.simple(kids[2]);
                self.out.push(')');
                self.body(kids[3]);
            }
            NodeLabel::Foreach => {
                self.out.push_str("foreach (");
                self.out.push_str(node.value.as_deref().unwrap_or(""));
                self.out.push(' ');
                self.out.push_str(self.value(kids[0]));
                self.out.push_str(" in ");
                self.expr(kids[1]);
                self.out.push(')');
                self.body(kids[2]);
            }
            NodeLabel::Return => {
                self.out.push_str("return");
                if let Some(&e) = kids.first() {
                    self.out.push(' ');
                    self.expr(e);
                }
                self.out.push(';');
            }
            NodeLabel::Throw => {
                self.out.push_str("throw ");
                self.expr(kids[0]);
                self.out.push(';');
            }
            NodeLabel::Break => self.out.push_str("break;"),
            NodeLabel::Continue => self.out.push_str("continue;"),
            _ => {
                self.simple(id);
                self.out.push(';');
            }
        }
    }

    fn simple(&mut self, id: NodeId) {
        let node = self.tree.node(id);
        match node.label {
            NodeLabel::Empty => {}
            NodeLabel::VarDecl => {
                self.out.push_str(node.value.as_deref().unwrap_or(""));
                self.out.push(' ');
                self.out.push_str(self.value(node.children[0]));
                if let Some(&init) = node.children.get(1) {
                    self.out.push_str(" = ");
                    self.expr(init);
                }
            }
            NodeLabel::Assign => {
                self.expr(node.children[0]);
                self.out.push_str(" = ");
                self.expr(node.children[1]);
            }
            _ => self.expr(id),
        }
    }

    fn args(&mut self, args: &[NodeId]) {
        self.out.push('(');
        for (i, &a) in args.iter().enumerate() {
            if i > 0 {
                self.out.push_str(", ");
            }
            self.expr(a);
        }
        self.out.push(')');
    }

    fn operand(&mut self, id: NodeId) {
        if matches!(self.tree.node(id).label, NodeLabel::BinaryOp | NodeLabel::UnaryOp) {
            self.out.push('(');
            self.expr(id);
            self.out.push(')');
        } else {
            self.expr(id);
        }
    }

    fn expr(&mut self, id: NodeId) {
        let node = self.tree.node(id);
        let kids = &node.children;
        match node.label {
            NodeLabel::Name | NodeLabel::Literal => self.out.push_str(self.value(id)),
            NodeLabel::BinaryOp => {
                self.operand(kids[0]);
                self.out.push(' ');
                self.out.push_str(self.value(id));
                self.out.push(' ');
                self.operand(kids[1]);
            }
            NodeLabel::UnaryOp => {
                self.out.push_str(self.value(id));
                self.operand(kids[0]);
            }
            NodeLabel::FieldAccess => {
                self.operand(kids[0]);
                self.out.push('.');
                self.out.push_str(self.value(id));
            }
            NodeLabel::Index => {
                self.operand(kids[0]);
                self.out.push('[');
                self.expr(kids[1]);
                self.out.push(']');
            }
            NodeLabel::Call => {
                self.operand(kids[0]);
                self.args(&kids[1..]);
            }
            NodeLabel::New => {
                self.out.push_str("new ");
                self.out.push_str(self.value(id));
                self.args(kids);
            }
            _ => self.statement(id),
        }
    }
}
