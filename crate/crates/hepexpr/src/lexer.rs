//! Tokenizer for the root and numexpr expression dialects.
//!
//! Both dialects share one lexical alphabet; the numexpr dialect simply
//! refuses the root-only lexemes (`::`, `&&`, `||`, `!`, `%`, `[`, `]`,
//! `:`) so that callers get a positioned diagnostic naming the offending
//! token instead of a generic syntax error further up.

use std::fmt;

use crate::dialect::Dialect;

/// Position of a character in the source text.
///
/// `offset` counts Unicode scalar values (not bytes) from the start of the
/// input; `line` and `column` are 1-based. Errors reported at end of input
/// carry the position one past the last character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePosition {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl SourcePosition {
    pub fn start() -> Self {
        SourcePosition {
            offset: 0,
            line: 1,
            column: 1,
        }
    }
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Coarse classification of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenCategory {
    Name,
    Number,
    Operator,
    Punct,
}

impl TokenCategory {
    pub fn name(self) -> &'static str {
        match self {
            TokenCategory::Name => "NAME",
            TokenCategory::Number => "NUMBER",
            TokenCategory::Operator => "OPERATOR",
            TokenCategory::Punct => "PUNCT",
        }
    }
}

impl fmt::Display for TokenCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub lexeme: String,
    pub category: TokenCategory,
    pub position: SourcePosition,
}

/// Marker used as the `found` lexeme when input ends prematurely.
pub const END_OF_INPUT: &str = "end of input";

/// A positioned syntax diagnostic.
///
/// `expected` is never empty and `message` always names the found lexeme
/// and at least one expected alternative, so the error is self-describing
/// even without the structured fields.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub position: SourcePosition,
    pub found: String,
    pub expected: Vec<String>,
    pub message: String,
}

impl ParseError {
    /// Generic "found X, expected one of Y" error. `detail` may add a
    /// dialect- or construct-specific explanation.
    pub fn new(
        position: SourcePosition,
        found: impl Into<String>,
        expected: Vec<String>,
        detail: Option<&str>,
    ) -> Self {
        assert!(!expected.is_empty(), "expected set must be non-empty");
        let found = found.into();
        let shown = if found == END_OF_INPUT {
            found.clone()
        } else {
            format!("'{found}'")
        };
        let mut message = format!("found {shown}, expected {}", join_alternatives(&expected));
        if let Some(d) = detail {
            message.push_str(": ");
            message.push_str(d);
        }
        ParseError {
            position,
            found,
            expected,
            message,
        }
    }

    fn invalid_character(position: SourcePosition, ch: char) -> Self {
        ParseError::new(
            position,
            ch.to_string(),
            all_categories(),
            Some("character does not start any token"),
        )
    }

    fn root_only_lexeme(position: SourcePosition, lexeme: &str) -> Self {
        ParseError::new(
            position,
            lexeme,
            all_categories(),
            Some(&format!(
                "'{lexeme}' is part of the root dialect only, not numexpr"
            )),
        )
    }
}

fn all_categories() -> Vec<String> {
    vec![
        TokenCategory::Name.name().to_string(),
        TokenCategory::Number.name().to_string(),
        TokenCategory::Operator.name().to_string(),
        TokenCategory::Punct.name().to_string(),
    ]
}

fn join_alternatives(expected: &[String]) -> String {
    match expected.len() {
        1 => expected[0].clone(),
        2 => format!("{} or {}", expected[0], expected[1]),
        _ => {
            let head = expected[..expected.len() - 1].join(", ");
            format!("one of {head} or {}", expected[expected.len() - 1])
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Lexemes that the numexpr tokenizer refuses outright.
const ROOT_ONLY_LEXEMES: &[&str] = &["::", "&&", "||", "!", "%", "[", "]", ":"];

const TWO_CHAR_OPERATORS: &[&str] = &["**", "::", "&&", "||", "==", "!=", "<=", ">=", "<<", ">>"];

fn is_whitespace(c: char) -> bool {
    matches!(c, ' ' | '\t' | '\n' | '\r')
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Lexer {
    chars: Vec<char>,
    pos: SourcePosition,
}

impl Lexer {
    fn new(text: &str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: SourcePosition::start(),
        }
    }

    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos.offset + ahead).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos.offset];
        self.pos.offset += 1;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        c
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(0), Some(c) if is_whitespace(c)) {
            self.bump();
        }
    }

    fn lex_name(&mut self) -> Token {
        let position = self.pos;
        let mut lexeme = String::new();
        while matches!(self.peek(0), Some(c) if is_name_continue(c)) {
            lexeme.push(self.bump());
        }
        Token {
            lexeme,
            category: TokenCategory::Name,
            position,
        }
    }

    /// NUMBER := digits ["." digits*] [exp] | "." digits+ [exp]
    /// where exp := (e|E) [+|-] digits+. A trailing `e` not followed by
    /// digits is left for the next token.
    fn lex_number(&mut self) -> Token {
        let position = self.pos;
        let mut lexeme = String::new();
        if self.peek(0) == Some('.') {
            lexeme.push(self.bump());
            while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                lexeme.push(self.bump());
            }
        } else {
            while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                lexeme.push(self.bump());
            }
            if self.peek(0) == Some('.') {
                lexeme.push(self.bump());
                while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                    lexeme.push(self.bump());
                }
            }
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let mut ahead = 1;
            if matches!(self.peek(1), Some('+' | '-')) {
                ahead = 2;
            }
            if matches!(self.peek(ahead), Some(c) if c.is_ascii_digit()) {
                lexeme.push(self.bump());
                if matches!(self.peek(0), Some('+' | '-')) {
                    lexeme.push(self.bump());
                }
                while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                    lexeme.push(self.bump());
                }
            }
        }
        Token {
            lexeme,
            category: TokenCategory::Number,
            position,
        }
    }

    fn lex_operator_or_punct(&mut self) -> Option<Token> {
        let position = self.pos;
        if let (Some(a), Some(b)) = (self.peek(0), self.peek(1)) {
            let pair: String = [a, b].iter().collect();
            if TWO_CHAR_OPERATORS.contains(&pair.as_str()) {
                self.bump();
                self.bump();
                return Some(Token {
                    lexeme: pair,
                    category: TokenCategory::Operator,
                    position,
                });
            }
        }
        let c = self.peek(0)?;
        let category = match c {
            '(' | ')' | '[' | ']' | ',' => TokenCategory::Punct,
            '+' | '-' | '*' | '/' | '%' | '~' | '!' | '^' | '&' | '|' | '<' | '>' | ':' => {
                TokenCategory::Operator
            }
            _ => return None,
        };
        self.bump();
        Some(Token {
            lexeme: c.to_string(),
            category,
            position,
        })
    }
}

/// Split `text` into tokens for the given source dialect.
///
/// Whitespace (space, tab, CR, LF) separates tokens and is discarded;
/// concatenating the returned lexemes with the original whitespace restored
/// reproduces the input. Fails with a positioned [`ParseError`] on any
/// character outside the token alphabet, and, for numexpr input, on any
/// root-only lexeme.
pub fn tokenize(text: &str, source: Dialect) -> Result<Vec<Token>, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        lexer.skip_whitespace();
        let Some(c) = lexer.peek(0) else {
            break;
        };
        let token = if is_name_start(c) {
            lexer.lex_name()
        } else if c.is_ascii_digit() || (c == '.' && matches!(lexer.peek(1), Some(d) if d.is_ascii_digit()))
        {
            lexer.lex_number()
        } else if let Some(t) = lexer.lex_operator_or_punct() {
            t
        } else {
            return Err(ParseError::invalid_character(lexer.pos, c));
        };
        if source == Dialect::Numexpr && ROOT_ONLY_LEXEMES.contains(&token.lexeme.as_str()) {
            return Err(ParseError::root_only_lexeme(token.position, &token.lexeme));
        }
        tokens.push(token);
    }
    Ok(tokens)
}
