use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Lexical class of a [`Token`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Identifier,
    Keyword,
    /// Any numeric literal (integers, hex, decimals with suffixes).
    LiteralInt,
    /// String and character literals, quotes included.
    LiteralString,
    Operator,
    /// One of `( ) { } [ ] ; , . :`.
    Separator,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Identifier => "identifier",
            TokenKind::Keyword => "keyword",
            TokenKind::LiteralInt => "literal-int",
            TokenKind::LiteralString => "literal-string",
            TokenKind::Operator => "operator",
            TokenKind::Separator => "separator",
        }
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: Position,
}

/// How source text is split into tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TokenizeMode {
    /// Programming-language tokens; operators and separators always stand alone
    /// and comments are dropped.
    #[default]
    Lexical,
    /// Maximal runs of non-whitespace characters, so `IsSimilar(` is one token.
    Whitespace,
    /// Every character, whitespace included, is its own token.
    Character,
}

impl TokenizeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenizeMode::Lexical => "lexical",
            TokenizeMode::Whitespace => "whitespace",
            TokenizeMode::Character => "character",
        }
    }
}

impl core::str::FromStr for TokenizeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexical" => Ok(TokenizeMode::Lexical),
            "whitespace" => Ok(TokenizeMode::Whitespace),
            "character" | "char" => Ok(TokenizeMode::Character),
            other => Err(alloc::format!("unknown tokenization mode `{other}`")),
        }
    }
}

/// Ordered tokens of one method (or any source fragment).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenSequence {
    pub tokens: Vec<Token>,
    pub mode: TokenizeMode,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn lexemes(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.lexeme.as_str()).collect()
    }

    /// Lexemes joined by single spaces.
    pub fn joined(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&t.lexeme);
        }
        out
    }

    /// Builds a sequence from bare lexemes, classifying each one as the
    /// lexical scanner would. Positions are synthetic (one token per column).
    pub fn from_lexemes<S: AsRef<str>>(lexemes: &[S], mode: TokenizeMode) -> Self {
        let tokens = lexemes
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let lexeme = s.as_ref().to_string();
                Token { kind: classify(&lexeme), lexeme, position: Position { line: 1, column: i as u32 + 1 } }
            })
            .collect();
        TokenSequence { tokens, mode }
    }
}

/// Union of Java and C# keywords (`super` and `base` are both accepted).
pub const KEYWORDS: &[&str] = &[
    "abstract",
    "base",
    "bool",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "extends",
    "false",
    "final",
    "finally",
    "float",
    "for",
    "foreach",
    "if",
    "implements",
    "in",
    "int",
    "interface",
    "internal",
    "long",
    "namespace",
    "new",
    "null",
    "object",
    "override",
    "private",
    "protected",
    "public",
    "readonly",
    "return",
    "sealed",
    "short",
    "static",
    "string",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "true",
    "try",
    "uint",
    "ulong",
    "using",
    "virtual",
    "void",
    "volatile",
    "while",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

const SEPARATORS: &[char] = &['(', ')', '{', '}', '[', ']', ';', ',', '.', ':'];

const MULTI_CHAR_OPERATORS: &[&str] = &[
    "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "->",
    "=>", "<<", ">>", "??",
];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn classify(lexeme: &str) -> TokenKind {
    let mut chars = lexeme.chars();
    let first = match chars.next() {
        Some(c) => c,
        None => return TokenKind::Operator,
    };
    if lexeme.chars().count() == 1 && SEPARATORS.contains(&first) {
        TokenKind::Separator
    } else if first == '"' || first == '\'' {
        TokenKind::LiteralString
    } else if first.is_ascii_digit() {
        TokenKind::LiteralInt
    } else if is_ident_start(first) && lexeme.chars().all(is_ident_continue) {
        if is_keyword(lexeme) {
            TokenKind::Keyword
        } else {
            TokenKind::Identifier
        }
    } else {
        TokenKind::Operator
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line: 1, column: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn position(&self) -> Position {
        Position { line: self.line, column: self.column }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }
}

/// Splits `source` into tokens. Total and deterministic: any text tokenizes.
pub fn tokenize(source: &str, mode: TokenizeMode) -> TokenSequence {
    let tokens = match mode {
        TokenizeMode::Lexical => lex(source),
        TokenizeMode::Whitespace => split_whitespace(source),
        TokenizeMode::Character => split_chars(source),
    };
    TokenSequence { tokens, mode }
}

fn split_whitespace(source: &str) -> Vec<Token> {
    let mut cur = Cursor::new(source);
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let position = cur.position();
        let mut lexeme = String::new();
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                break;
            }
            lexeme.push(c);
            cur.bump();
        }
        out.push(Token { kind: classify(&lexeme), lexeme, position });
    }
    out
}

fn split_chars(source: &str) -> Vec<Token> {
    let mut cur = Cursor::new(source);
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let position = cur.position();
        cur.bump();
        let lexeme = c.to_string();
        out.push(Token { kind: classify(&lexeme), lexeme, position });
    }
    out
}

fn lex(source: &str) -> Vec<Token> {
    let mut cur = Cursor::new(source);
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.starts_with("//") {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if cur.starts_with("/*") {
            cur.bump();
            cur.bump();
            while cur.peek().is_some() && !cur.starts_with("*/") {
                cur.bump();
            }
            // unterminated block comments swallow the rest of the input
            cur.bump();
            cur.bump();
            continue;
        }

        let position = cur.position();
        let mut lexeme = String::new();
        let kind = if is_ident_start(c) {
            while let Some(c) = cur.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                lexeme.push(c);
                cur.bump();
            }
            if is_keyword(&lexeme) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else if c.is_ascii_digit() {
            while let Some(c) = cur.peek() {
                let fraction_dot = c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit());
                if !(c.is_ascii_alphanumeric() || c == '_' || fraction_dot) {
                    break;
                }
                lexeme.push(c);
                cur.bump();
            }
            TokenKind::LiteralInt
        } else if c == '"' || c == '\'' {
            let quote = c;
            lexeme.push(c);
            cur.bump();
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                lexeme.push(c);
                cur.bump();
                if c == '\\' {
                    if let Some(escaped) = cur.peek() {
                        if escaped != '\n' {
                            lexeme.push(escaped);
                            cur.bump();
                        }
                    }
                } else if c == quote {
                    break;
                }
            }
            TokenKind::LiteralString
        } else if SEPARATORS.contains(&c) {
            lexeme.push(c);
            cur.bump();
            TokenKind::Separator
        } else {
            match MULTI_CHAR_OPERATORS.iter().find(|op| cur.starts_with(op)) {
                Some(op) => {
                    for _ in 0..op.chars().count() {
                        cur.bump();
                    }
                    lexeme.push_str(op);
                }
                None => {
                    lexeme.push(c);
                    cur.bump();
                }
            }
            TokenKind::Operator
        };
        out.push(Token { kind, lexeme, position });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexemes(src: &str, mode: TokenizeMode) -> Vec<String> {
        tokenize(src, mode).tokens.into_iter().map(|t| t.lexeme).collect()
    }

    #[test]
    fn assignment_splits_into_four_tokens() {
        assert_eq!(lexemes("j = 1;", TokenizeMode::Lexical), ["j", "=", "1", ";"]);
    }

    #[test]
    fn whitespace_mode_keeps_glued_call() {
        assert_eq!(lexemes("IsSimilar (", TokenizeMode::Whitespace), ["IsSimilar", "("]);
        assert_eq!(lexemes("IsSimilar(", TokenizeMode::Whitespace), ["IsSimilar("]);
    }

    #[test]
    fn super_call_token_count() {
        // character-class scan by hand: super ( ta , initialSize ) ;
        let toks = tokenize("super(ta, initialSize);", TokenizeMode::Lexical);
        let kinds: Vec<TokenKind> = toks.tokens.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            [
                TokenKind::Keyword,
                TokenKind::Separator,
                TokenKind::Identifier,
                TokenKind::Separator,
                TokenKind::Identifier,
                TokenKind::Separator,
                TokenKind::Separator,
            ]
        );
    }

    #[test]
    fn comments_are_stripped_in_lexical_mode() {
        let src = "a /* b c */ = 1; // trailing\nreturn";
        assert_eq!(lexemes(src, TokenizeMode::Lexical), ["a", "=", "1", ";", "return"]);
    }

    #[test]
    fn multi_char_operators_and_unknown_chars() {
        assert_eq!(lexemes("a<=b&&c!=d # e", TokenizeMode::Lexical), ["a", "<=", "b", "&&", "c", "!=", "d", "#", "e"]);
    }

    #[test]
    fn string_literals_keep_spaces() {
        let toks = tokenize(r#"s = "a \"b\" c";"#, TokenizeMode::Lexical);
        assert_eq!(toks.tokens[2].lexeme, r#""a \"b\" c""#);
        assert_eq!(toks.tokens[2].kind, TokenKind::LiteralString);
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("a\n  b", TokenizeMode::Lexical);
        assert_eq!(toks.tokens[0].position, Position { line: 1, column: 1 });
        assert_eq!(toks.tokens[1].position, Position { line: 2, column: 3 });
    }

    #[test]
    fn character_mode_counts_every_char() {
        let toks = tokenize("a b", TokenizeMode::Character);
        assert_eq!(toks.len(), 3);
        assert_eq!(toks.tokens[1].lexeme, " ");
    }

    #[test]
    fn numbers_with_fraction_and_member_access() {
        assert_eq!(lexemes("x = 1.5f + a.b;", TokenizeMode::Lexical), ["x", "=", "1.5f", "+", "a", ".", "b", ";"]);
    }
}
