//! Lexer, parser and printer for MiniLang, a small C-family language that
//! covers the method bodies found in Java and C# migration pairs.

mod lexer;
mod parser;
mod printer;
mod tree;

pub use lexer::{is_keyword, tokenize, Position, Token, TokenKind, TokenSequence, TokenizeMode, KEYWORDS};
pub use parser::{parse, parse_source, Diagnostic, ParseOutcome, ParseStatus};
pub use printer::pretty_print;
pub use tree::{NodeId, NodeLabel, SyntaxNode, SyntaxTree, TreeBuilder};
