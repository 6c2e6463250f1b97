//! Abstract node labels: types, operators, callees and small literals, never
//! local variable names.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};

use crate::minilang::{NodeId, NodeLabel, SyntaxTree};

const INT_TYPES: &[&str] = &["int", "long", "short", "byte", "uint", "ulong", "Integer", "Long"];

/// Declared types of parameters and locals, by name.
#[derive(Debug, Default, Clone)]
pub(super) struct TypeEnv {
    types: BTreeMap<String, String>,
}

impl TypeEnv {
    pub(super) fn declare(&mut self, name: &str, ty: &str) {
        self.types.insert(name.to_string(), ty.to_string());
    }

    pub(super) fn contains(&self, name: &str) -> bool {
        self.types.contains_key(name)
    }

    fn bucket_of(&self, name: &str) -> Option<&'static str> {
        self.types.get(name).map(|t| bucket(t))
    }
}

/// Two-bucket type scheme: integral types are `int`, everything else `obj`.
pub(super) fn bucket(ty: &str) -> &'static str {
    if INT_TYPES.contains(&ty) {
        "int"
    } else {
        "obj"
    }
}

pub(super) fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn is_receiver_keyword(name: &str) -> bool {
    matches!(name, "this" | "base" | "super")
}

pub(super) fn comparison_name(op: &str) -> Option<&'static str> {
    Some(match op {
        "<" => "Small",
        "<=" => "SmallEq",
        ">" => "Great",
        ">=" => "GreatEq",
        "==" => "Eq",
        "!=" => "NotEq",
        _ => return None,
    })
}

fn operator_name(op: &str) -> &'static str {
    match op {
        "+" => "Add",
        "-" => "Sub",
        "*" => "Mul",
        "/" => "Div",
        "%" => "Mod",
        "&&" => "And",
        "||" => "Or",
        "!" => "Not",
        _ => comparison_name(op).unwrap_or("Op"),
    }
}

fn literal_tag(lexeme: &str) -> String {
    match lexeme {
        "true" | "false" => return "Bool".into(),
        "null" => return "Null".into(),
        _ => {}
    }
    if lexeme.starts_with('"') || lexeme.starts_with('\'') {
        return "Str".into();
    }
    if lexeme.len() == 1 && lexeme.as_bytes()[0].is_ascii_digit() {
        return lexeme.into();
    }
    if lexeme.bytes().all(|b| b.is_ascii_digit()) {
        "Int".into()
    } else {
        "Num".into()
    }
}

/// Name of the invoked method: the bare name or the accessed member.
pub(super) fn callee_name(tree: &SyntaxTree, call: NodeId) -> String {
    let callee = tree.node(tree.node(call).children[0]);
    match callee.label {
        NodeLabel::Name | NodeLabel::FieldAccess => callee.value.clone().unwrap_or_default(),
        _ => "expr".into(),
    }
}

/// Type bucket of an expression's value.
pub(super) fn expr_bucket(tree: &SyntaxTree, id: NodeId, env: &TypeEnv) -> &'static str {
    let node = tree.node(id);
    match node.label {
        NodeLabel::Literal => {
            let v = node.value.as_deref().unwrap_or("");
            if v.bytes().all(|b| b.is_ascii_digit()) && !v.is_empty() {
                "int"
            } else {
                "obj"
            }
        }
        NodeLabel::Name => env.bucket_of(node.value.as_deref().unwrap_or("")).unwrap_or("obj"),
        NodeLabel::BinaryOp => match node.value.as_deref() {
            Some("+" | "-" | "*" | "/" | "%") => {
                let l = expr_bucket(tree, node.children[0], env);
                let r = expr_bucket(tree, node.children[1], env);
                if l == "int" && r == "int" {
                    "int"
                } else {
                    "obj"
                }
            }
            _ => "obj",
        },
        NodeLabel::UnaryOp if node.value.as_deref() == Some("-") => "int",
        _ => "obj",
    }
}

/// Short tag describing an expression operand.
pub(super) fn expr_tag(tree: &SyntaxTree, id: NodeId, env: &TypeEnv) -> String {
    let node = tree.node(id);
    let value = node.value.as_deref().unwrap_or("");
    match node.label {
        NodeLabel::Literal => literal_tag(value),
        NodeLabel::Name if is_receiver_keyword(value) => "This".into(),
        NodeLabel::Name => capitalize(expr_bucket(tree, id, env)),
        NodeLabel::Call => format!("Call:{}", callee_name(tree, id)),
        NodeLabel::New => format!("New:{value}"),
        NodeLabel::FieldAccess => format!("Field:{value}"),
        NodeLabel::Index => "Index".into(),
        NodeLabel::BinaryOp | NodeLabel::UnaryOp => operator_name(value).into(),
        _ => "Expr".into(),
    }
}

/// Label of a branch or loop condition, e.g. `intSmall2` for `i < 2`.
pub(super) fn predicate_label(tree: &SyntaxTree, cond: NodeId, env: &TypeEnv) -> String {
    let node = tree.node(cond);
    if node.label == NodeLabel::Empty {
        return "condTrue".into();
    }
    if node.label == NodeLabel::BinaryOp {
        if let Some(op) = node.value.as_deref().and_then(comparison_name) {
            let lhs = expr_bucket(tree, node.children[0], env);
            return format!("{lhs}{op}{}", expr_tag(tree, node.children[1], env));
        }
    }
    format!("cond{}", expr_tag(tree, cond, env))
}

/// Variables read by an expression. Callee names and `this`/`base`/`super`
/// are not variables.
pub(super) fn collect_uses(tree: &SyntaxTree, id: NodeId, out: &mut alloc::collections::BTreeSet<String>) {
    let node = tree.node(id);
    match node.label {
        NodeLabel::Name => {
            let v = node.value.as_deref().unwrap_or("");
            if !is_receiver_keyword(v) && !v.is_empty() {
                out.insert(v.to_string());
            }
        }
        NodeLabel::Call => {
            let callee = node.children[0];
            if tree.node(callee).label != NodeLabel::Name {
                collect_uses(tree, callee, out);
            }
            for &a in &node.children[1..] {
                collect_uses(tree, a, out);
            }
        }
        _ => {
            for &c in &node.children {
                collect_uses(tree, c, out);
            }
        }
    }
}

/// Base variable written by an assignment target (`x`, `x.f`, `x[i]`).
pub(super) fn assigned_base(tree: &SyntaxTree, target: NodeId) -> Option<String> {
    let node = tree.node(target);
    match node.label {
        NodeLabel::Name => {
            let v = node.value.as_deref()?;
            (!is_receiver_keyword(v)).then(|| v.to_string())
        }
        NodeLabel::FieldAccess | NodeLabel::Index => assigned_base(tree, node.children[0]),
        _ => None,
    }
}
