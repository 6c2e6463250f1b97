use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::lexer::{Position, Token, TokenKind, TokenSequence, TokenizeMode};
use super::tree::{NodeId, NodeLabel, SyntaxTree, TreeBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub position: Position,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseStatus {
    Parsed,
    /// No tree could be built; only the token level is usable.
    LexOnly,
}

#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub status: ParseStatus,
    pub tree: Option<SyntaxTree>,
    pub tokens: TokenSequence,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn is_parsed(&self) -> bool {
        self.status == ParseStatus::Parsed
    }
}

const MAX_DEPTH: usize = 200;

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "internal",
    "static",
    "final",
    "abstract",
    "override",
    "virtual",
    "sealed",
    "readonly",
    "synchronized",
    "volatile",
    "const",
];

const TYPE_KEYWORDS: &[&str] = &[
    "void", "int", "long", "short", "byte", "char", "bool", "boolean", "double", "float", "string", "object", "uint",
    "ulong",
];

/// Parses a lexical token sequence into a syntax tree.
///
/// Any syntax error downgrades the whole input to [`ParseStatus::LexOnly`];
/// there is no recovery inside a method.
pub fn parse(tokens: &TokenSequence) -> ParseOutcome {
    if tokens.mode != TokenizeMode::Lexical {
        return ParseOutcome {
            status: ParseStatus::LexOnly,
            tree: None,
            tokens: tokens.clone(),
            diagnostics: alloc::vec![Diagnostic {
                position: Position { line: 1, column: 1 },
                message: format!("parsing needs lexical tokens, got {} mode", tokens.mode.as_str()),
            }],
        };
    }
    let mut parser = Parser { toks: &tokens.tokens, pos: 0, depth: 0, out: TreeBuilder::new() };
    match parser.unit() {
        Ok(root) => ParseOutcome {
            status: ParseStatus::Parsed,
            tree: Some(parser.out.finish(root)),
            tokens: tokens.clone(),
            diagnostics: Vec::new(),
        },
        Err(d) => ParseOutcome {
            status: ParseStatus::LexOnly,
            tree: None,
            tokens: tokens.clone(),
            diagnostics: alloc::vec![d],
        },
    }
}

/// Tokenizes in lexical mode and parses.
pub fn parse_source(source: &str) -> ParseOutcome {
    parse(&super::lexer::tokenize(source, TokenizeMode::Lexical))
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    depth: usize,
    out: TreeBuilder,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.toks.get(self.pos)
    }

    fn peek_lexeme(&self) -> Option<&'t str> {
        self.peek().map(|t| t.lexeme.as_str())
    }

    fn lexeme_at(&self, i: usize) -> Option<&'t str> {
        self.toks.get(i).map(|t| t.lexeme.as_str())
    }

    fn at(&self, lexeme: &str) -> bool {
        self.peek_lexeme() == Some(lexeme)
    }

    fn eat(&mut self, lexeme: &str) -> bool {
        if self.at(lexeme) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Diagnostic {
        let position = match self.peek().or_else(|| self.toks.last()) {
            Some(t) => t.position,
            None => Position { line: 1, column: 1 },
        };
        let found = match self.peek() {
            Some(t) => format!("`{}`", t.lexeme),
            None => String::from("end of input"),
        };
        Diagnostic { position, message: format!("{}, found {}", message.into(), found) }
    }

    fn expect(&mut self, lexeme: &str) -> PResult<()> {
        if self.eat(lexeme) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{lexeme}`")))
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.error("nesting too deep"))
        } else {
            Ok(())
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn identifier(&mut self) -> PResult<&'t str> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(t.lexeme.as_str())
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    fn is_type_start(&self, i: usize) -> bool {
        match self.toks.get(i) {
            Some(t) => {
                t.kind == TokenKind::Identifier
                    || (t.kind == TokenKind::Keyword && TYPE_KEYWORDS.contains(&t.lexeme.as_str()))
            }
            None => false,
        }
    }

    /// Index just past a type starting at `i`, if one is there.
    fn scan_type(&self, mut i: usize) -> Option<usize> {
        if !self.is_type_start(i) {
            return None;
        }
        i += 1;
        while self.lexeme_at(i) == Some(".") && self.toks.get(i + 1).is_some_and(|t| t.kind == TokenKind::Identifier) {
            i += 2;
        }
        while self.lexeme_at(i) == Some("[") && self.lexeme_at(i + 1) == Some("]") {
            i += 2;
        }
        Some(i)
    }

    fn parse_type(&mut self) -> PResult<String> {
        let end = self.scan_type(self.pos).ok_or_else(|| self.error("expected type"))?;
        let mut text = String::new();
        for t in &self.toks[self.pos..end] {
            text.push_str(&t.lexeme);
        }
        self.pos = end;
        Ok(text)
    }

    fn unit(&mut self) -> PResult<NodeId> {
        let mut methods = Vec::new();
        loop {
            methods.push(self.method()?);
            if self.peek().is_none() {
                break;
            }
        }
        if methods.len() == 1 {
            Ok(methods[0])
        } else {
            Ok(self.out.add(NodeLabel::Unit, None, methods))
        }
    }

    fn method(&mut self) -> PResult<NodeId> {
        while self.peek_lexeme().is_some_and(|l| MODIFIERS.contains(&l)) {
            self.pos += 1;
        }
        let return_type = match self.scan_type(self.pos) {
            Some(end) if self.toks.get(end).is_some_and(|t| t.kind == TokenKind::Identifier) => {
                Some(self.parse_type()?)
            }
            _ => None,
        };
        let name = self.identifier()?;
        let name = self.out.leaf(NodeLabel::Name, name);
        self.expect("(")?;
        let mut params = Vec::new();
        if !self.at(")") {
            loop {
                while self.peek_lexeme().is_some_and(|l| MODIFIERS.contains(&l)) {
                    self.pos += 1;
                }
                let ty = self.parse_type()?;
                let pname = self.identifier()?;
                let pname = self.out.leaf(NodeLabel::Name, pname);
                params.push(self.out.add(NodeLabel::Param, Some(&ty), alloc::vec![pname]));
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        let params = self.out.add(NodeLabel::Params, None, params);
        let mut children = alloc::vec![name, params];
        if self.eat(":") {
            let keyword = match self.peek_lexeme() {
                Some(k @ ("base" | "this" | "super")) => k,
                _ => return Err(self.error("expected `base`, `this` or `super`")),
            };
            self.pos += 1;
            self.expect("(")?;
            let args = self.arguments()?;
            children.push(self.out.add(NodeLabel::BaseCall, Some(keyword), args));
        }
        if self.eat("throws") {
            self.parse_type()?;
            while self.eat(",") {
                self.parse_type()?;
            }
        }
        if !self.at("{") {
            return Err(self.error("expected method body"));
        }
        children.push(self.block()?);
        Ok(self.out.add(NodeLabel::Method, return_type.as_deref(), children))
    }

    fn block(&mut self) -> PResult<NodeId> {
        self.enter()?;
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.at("}") {
            if self.peek().is_none() {
                return Err(self.error("unterminated block"));
            }
            stmts.push(self.statement()?);
        }
        self.pos += 1;
        self.leave();
        Ok(self.out.add(NodeLabel::Block, None, stmts))
    }

    fn statement(&mut self) -> PResult<NodeId> {
        self.enter()?;
        let stmt = self.statement_inner()?;
        self.leave();
        Ok(stmt)
    }

    fn statement_inner(&mut self) -> PResult<NodeId> {
        match self.peek_lexeme() {
            Some("{") => self.block(),
            Some("if") => {
                self.pos += 1;
                self.expect("(")?;
                let cond = self.expr()?;
                self.expect(")")?;
                let then = self.statement()?;
                let mut children = alloc::vec![cond, then];
                if self.eat("else") {
                    children.push(self.statement()?);
                }
                Ok(self.out.add(NodeLabel::If, None, children))
            }
            Some("while") => {
                self.pos += 1;
                self.expect("(")?;
                let cond = self.expr()?;
                self.expect(")")?;
                let body = self.statement()?;
                Ok(self.out.add(NodeLabel::While, None, alloc::vec![cond, body]))
            }
            Some("for") => self.for_statement(),
            Some("foreach") => {
                self.pos += 1;
                self.expect("(")?;
                let ty = self.parse_type()?;
                let var = self.identifier()?;
                let var = self.out.leaf(NodeLabel::Name, var);
                self.expect("in")?;
                let collection = self.expr()?;
                self.expect(")")?;
                let body = self.statement()?;
                Ok(self.out.add(NodeLabel::Foreach, Some(&ty), alloc::vec![var, collection, body]))
            }
            Some("return") => {
                self.pos += 1;
                let mut children = Vec::new();
                if !self.at(";") {
                    children.push(self.expr()?);
                }
                self.expect(";")?;
                Ok(self.out.add(NodeLabel::Return, None, children))
            }
            Some("throw") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(";")?;
                Ok(self.out.add(NodeLabel::Throw, None, alloc::vec![e]))
            }
            Some("break") => {
                self.pos += 1;
                self.expect(";")?;
                Ok(self.out.add(NodeLabel::Break, None, Vec::new()))
            }
            Some("continue") => {
                self.pos += 1;
                self.expect(";")?;
                Ok(self.out.add(NodeLabel::Continue, None, Vec::new()))
            }
            Some(_) => {
                let s = self.simple_statement()?;
                self.expect(";")?;
                Ok(s)
            }
            None => Err(self.error("expected statement")),
        }
    }

    fn for_statement(&mut self) -> PResult<NodeId> {
        self.pos += 1;
        self.expect("(")?;
        // Java enhanced for: `for (T x : xs)`
        if let Some(end) = self.scan_type(self.pos) {
            if self.toks.get(end).is_some_and(|t| t.kind == TokenKind::Identifier)
                && self.lexeme_at(end + 1) == Some(":")
            {
                let ty = self.parse_type()?;
                let var = self.identifier()?;
                let var = self.out.leaf(NodeLabel::Name, var);
                self.expect(":")?;
                let collection = self.expr()?;
                self.expect(")")?;
                let body = self.statement()?;
                return Ok(self.out.add(NodeLabel::Foreach, Some(&ty), alloc::vec![var, collection, body]));
            }
        }
        let init =
            if self.at(";") { self.out.add(NodeLabel::Empty, None, Vec::new()) } else { self.simple_statement()? };
        self.expect(";")?;
        let cond = if self.at(";") { self.out.add(NodeLabel::Empty, None, Vec::new()) } else { self.expr()? };
        self.expect(";")?;
        let step =
            if self.at(")") { self.out.add(NodeLabel::Empty, None, Vec::new()) } else { self.simple_statement()? };
        self.expect(")")?;
        let body = self.statement()?;
        Ok(self.out.add(NodeLabel::For, None, alloc::vec![init, cond, step, body]))
    }

    fn looks_like_declaration(&self) -> bool {
        match self.scan_type(self.pos) {
            Some(end) => {
                self.toks.get(end).is_some_and(|t| t.kind == TokenKind::Identifier)
                    && matches!(self.lexeme_at(end + 1), Some("=" | ";" | ")"))
            }
            None => false,
        }
    }

    /// Declaration, assignment or call, without the trailing `;`.
    fn simple_statement(&mut self) -> PResult<NodeId> {
        if self.looks_like_declaration() {
            let ty = self.parse_type()?;
            let name = self.identifier()?;
            let name = self.out.leaf(NodeLabel::Name, name);
            let mut children = alloc::vec![name];
            if self.eat("=") {
                children.push(self.expr()?);
            }
            return Ok(self.out.add(NodeLabel::VarDecl, Some(&ty), children));
        }
        let start = self.pos;
        let target = self.expr()?;
        if self.eat("=") {
            let target_label = self.out_label(target);
            if !matches!(target_label, NodeLabel::Name | NodeLabel::FieldAccess | NodeLabel::Index) {
                self.pos = start;
                return Err(self.error("invalid assignment target"));
            }
            let value = self.expr()?;
            return Ok(self.out.add(NodeLabel::Assign, None, alloc::vec![target, value]));
        }
        if self.out_label(target) == NodeLabel::Call {
            Ok(target)
        } else {
            self.pos = start;
            Err(self.error("expression is not a statement"))
        }
    }

    fn out_label(&self, id: NodeId) -> NodeLabel {
        // the builder is append-only; peek at a node it already holds
        self.out_nodes()[id.index()].label
    }

    fn out_nodes(&self) -> &[super::tree::SyntaxNode] {
        self.out.nodes()
    }

    fn arguments(&mut self) -> PResult<Vec<NodeId>> {
        let mut args = Vec::new();
        if !self.at(")") {
            loop {
                args.push(self.expr()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(args)
    }

    fn expr(&mut self) -> PResult<NodeId> {
        self.enter()?;
        let e = self.binary(0)?;
        self.leave();
        Ok(e)
    }

    fn binary(&mut self, level: usize) -> PResult<NodeId> {
        const LEVELS: &[&[&str]] =
            &[&["||"], &["&&"], &["==", "!="], &["<", "<=", ">", ">="], &["+", "-"], &["*", "/", "%"]];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Some(op) = self.peek_lexeme().filter(|l| LEVELS[level].contains(l)) {
            self.pos += 1;
            let rhs = self.binary(level + 1)?;
            lhs = self.out.add(NodeLabel::BinaryOp, Some(op), alloc::vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<NodeId> {
        match self.peek_lexeme() {
            Some(op @ ("!" | "-")) => {
                self.pos += 1;
                self.enter()?;
                let inner = self.unary()?;
                self.leave();
                Ok(self.out.add(NodeLabel::UnaryOp, Some(op), alloc::vec![inner]))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> PResult<NodeId> {
        let mut e = self.primary()?;
        loop {
            if self.eat(".") {
                let member = self.identifier()?;
                e = self.out.add(NodeLabel::FieldAccess, Some(member), alloc::vec![e]);
            } else if self.eat("(") {
                let mut children = alloc::vec![e];
                children.extend(self.arguments()?);
                e = self.out.add(NodeLabel::Call, None, children);
            } else if self.eat("[") {
                let index = self.expr()?;
                self.expect("]")?;
                e = self.out.add(NodeLabel::Index, None, alloc::vec![e, index]);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> PResult<NodeId> {
        let tok = match self.peek() {
            Some(t) => t,
            None => return Err(self.error("expected expression")),
        };
        match (tok.kind, tok.lexeme.as_str()) {
            (TokenKind::LiteralInt | TokenKind::LiteralString, lexeme) => {
                self.pos += 1;
                Ok(self.out.leaf(NodeLabel::Literal, lexeme))
            }
            (TokenKind::Keyword, lexeme @ ("true" | "false" | "null")) => {
                self.pos += 1;
                Ok(self.out.leaf(NodeLabel::Literal, lexeme))
            }
            (TokenKind::Identifier, lexeme) | (TokenKind::Keyword, lexeme @ ("this" | "base" | "super")) => {
                self.pos += 1;
                Ok(self.out.leaf(NodeLabel::Name, lexeme))
            }
            (TokenKind::Keyword, "new") => {
                self.pos += 1;
                let ty = self.parse_type()?;
                self.expect("(")?;
                let args = self.arguments()?;
                Ok(self.out.add(NodeLabel::New, Some(&ty), args))
            }
            (TokenKind::Separator, "(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::lexer::tokenize;

    fn tree(src: &str) -> SyntaxTree {
        let out = parse_source(src);
        assert!(out.is_parsed(), "{src}: {:?}", out.diagnostics);
        out.tree.unwrap()
    }

    #[test]
    fn minimal_method() {
        assert_eq!(tree("void f() { }").to_sexpr(), "(Method void (Name f) (Params) (Block))");
    }

    #[test]
    fn constructor_reference_has_base_call_with_two_args() {
        let t = tree("public ClientQueryResult(Transaction ta, int initialSize) : base(ta, initialSize) {}");
        assert_eq!(
            t.to_sexpr(),
            "(Method (Name ClientQueryResult) (Params (Param Transaction (Name ta)) \
             (Param int (Name initialSize))) (BaseCall base (Name ta) (Name initialSize)) (Block))"
        );
    }

    #[test]
    fn garbled_constructor_is_lex_only() {
        let out =
            parse_source("public ClientQueryResult(Transaction ta, int initialSize) : base(ta {, initialSize) ; }");
        assert_eq!(out.status, ParseStatus::LexOnly);
        assert!(out.tree.is_none());
        assert!(!out.diagnostics.is_empty());
        assert_eq!(out.tokens.len(), 19);
    }

    #[test]
    fn java_super_call_in_body() {
        let t = tree("public ClientQueryResult(Transaction ta, int initialSize){ super(ta, initialSize); }");
        assert!(t.to_sexpr().contains("(Call (Name super) (Name ta) (Name initialSize))"));
    }

    #[test]
    fn example_fragments_parse() {
        let code1 = "void foo(int i) { int j; if (i < 2) { j = 1; } else { j = 2; } }";
        let code2 = "void foo(int i) { int j; if (i < 2) j = i; j = 2; }";
        assert_eq!(
            tree(code1).to_sexpr(),
            "(Method void (Name foo) (Params (Param int (Name i))) (Block (VarDecl int (Name j)) \
             (If (BinaryOp < (Name i) (Literal 2)) (Block (Assign (Name j) (Literal 1))) \
             (Block (Assign (Name j) (Literal 2))))))"
        );
        assert!(tree(code2).to_sexpr().contains("(If (BinaryOp < (Name i) (Literal 2)) (Assign (Name j) (Name i)))"));
    }

    #[test]
    fn loops_and_calls() {
        let src = r#"
            public void CurveTo(float x1, float y1) {
                if (state != 1) {
                    throw new IllegalPdfSyntaxException("Path construction operator inside text object.");
                }
                for (int k = 0; k < parts.Length; k = k + 1) { total = total + parts[k]; }
                foreach (string part in parts) { list.Add(part.Trim()); }
                for (String p : parts) { if (!p.isEmpty()) break; else continue; }
                while (it.hasNext()) { x = -it.next(); }
                return;
            }"#;
        let t = tree(src);
        for label in [
            NodeLabel::Throw,
            NodeLabel::New,
            NodeLabel::For,
            NodeLabel::Foreach,
            NodeLabel::While,
            NodeLabel::Index,
            NodeLabel::FieldAccess,
            NodeLabel::UnaryOp,
            NodeLabel::Break,
            NodeLabel::Continue,
        ] {
            assert!(t.contains_label(label), "missing {label}");
        }
    }

    #[test]
    fn precedence() {
        let t = tree("void f() { x = a + b * c == d && !e || f; }");
        assert!(t.to_sexpr().contains(
            "(BinaryOp || (BinaryOp && (BinaryOp == (BinaryOp + (Name a) (BinaryOp * (Name b) (Name c))) (Name d)) (UnaryOp ! (Name e))) (Name f))"
        ));
    }

    #[test]
    fn multiple_methods_make_a_unit() {
        let t = tree("void a() {} int b() { return 1; }");
        assert_eq!(t.node(t.root()).label, NodeLabel::Unit);
        assert_eq!(t.node(t.root()).children.len(), 2);
    }

    #[test]
    fn errors_are_values() {
        for src in ["", "void", "void f(", "void f() { x + 1; }", "void f() { 1 = x; }", "}{", "void f() {"] {
            let out = parse_source(src);
            assert_eq!(out.status, ParseStatus::LexOnly, "{src}");
            assert!(!out.diagnostics.is_empty());
        }
    }

    #[test]
    fn deep_nesting_does_not_overflow() {
        let mut src = String::from("void f() { x = ");
        for _ in 0..5000 {
            src.push('(');
        }
        src.push('1');
        let out = parse_source(&src);
        assert_eq!(out.status, ParseStatus::LexOnly);
    }

    #[test]
    fn whitespace_tokens_are_rejected() {
        let out = parse(&tokenize("void f() {}", TokenizeMode::Whitespace));
        assert_eq!(out.status, ParseStatus::LexOnly);
    }
}
