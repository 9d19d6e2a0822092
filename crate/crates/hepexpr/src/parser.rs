//! Deterministic parsers for the root and numexpr dialects.
//!
//! Both grammars share one precedence ladder (loosest first): multiple
//! output `:`, `||`, `&&`, `|`, `^`, `&`, equality, relational, shifts,
//! additive, multiplicative, unary, power, postfix, atom. All binary levels
//! associate left except `**`, which is right-associative. The numexpr
//! grammar enters the ladder at `|` and drops the root-only pieces: `%`,
//! unary `!`, subscripts, scoped `ns::name(...)` calls and multiple output.
//!
//! Every accepted numexpr string is therefore also accepted by the root
//! parser and produces a structurally identical tree.
//!
//! The implementation is a hand-written recursive-descent parser over the
//! token stream: each token is inspected a bounded number of times and the
//! binary levels iterate rather than recurse, so parse time is linear in
//! the token count. Grouping parentheses only steer the parse; they leave
//! no trace in the tree.

use crate::ast::{AstNode, BinaryOp, UnaryOp};
use crate::dialect::Dialect;
use crate::lexer::{tokenize, ParseError, SourcePosition, Token, TokenCategory, END_OF_INPUT};

/// Maximum nesting depth (parentheses, unary chains, `**` towers) before
/// the parser refuses with a diagnostic instead of risking stack overflow.
/// Kept small enough that the recursion fits comfortably in a 2 MiB thread
/// stack even in unoptimized builds.
const MAX_DEPTH: usize = 64;

type PResult = Result<AstNode, ParseError>;

/// Parse `text` in the given source dialect into an expression tree.
///
/// `source` must be `root` or `numexpr` (panics on `python`, which is
/// emit-only). Parsing is a pure function: equal inputs yield structurally
/// equal trees.
pub fn parse(text: &str, source: Dialect) -> PResult {
    assert!(
        source.is_parse_source(),
        "the {source} dialect cannot be parsed, only emitted"
    );
    let tokens = tokenize(text, source)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        dialect: source,
        depth: 0,
        eof: end_position(text),
    };
    let node = parser.parse_toplevel()?;
    if parser.peek().is_some() {
        return Err(parser.error_here(
            vec!["OPERATOR".to_string(), "end of input".to_string()],
            None,
        ));
    }
    Ok(node)
}

/// Position one past the final character, for end-of-input diagnostics.
fn end_position(text: &str) -> SourcePosition {
    let mut pos = SourcePosition::start();
    for c in text.chars() {
        pos.offset += 1;
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    dialect: Dialect,
    depth: usize,
    eof: SourcePosition,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn at_lexeme(&self, lexeme: &str) -> bool {
        matches!(self.peek(), Some(t) if t.lexeme == lexeme)
    }

    fn advance(&mut self) -> &'a Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn eat(&mut self, lexeme: &str) -> bool {
        if self.at_lexeme(lexeme) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error_here(&self, expected: Vec<String>, detail: Option<&str>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(t.position, t.lexeme.clone(), expected, detail),
            None => ParseError::new(self.eof, END_OF_INPUT, expected, detail),
        }
    }

    fn expect(&mut self, lexeme: &str) -> Result<(), ParseError> {
        if self.eat(lexeme) {
            Ok(())
        } else {
            Err(self.error_here(vec![format!("'{lexeme}'")], None))
        }
    }

    fn expr_start_expected(&self) -> Vec<String> {
        let mut v = vec![
            "NAME".to_string(),
            "NUMBER".to_string(),
            "'('".to_string(),
            "'+'".to_string(),
            "'-'".to_string(),
            "'~'".to_string(),
        ];
        if self.dialect == Dialect::Root {
            v.push("'!'".to_string());
        }
        v
    }

    /// Entry point; also used for the contents of grouping parentheses so
    /// that `(s)` parses exactly like `s` for every valid expression `s`.
    fn parse_toplevel(&mut self) -> PResult {
        let first = self.parse_infix()?;
        if self.dialect == Dialect::Root && self.at_lexeme(":") {
            let mut parts = vec![first];
            while self.eat(":") {
                parts.push(self.parse_infix()?);
            }
            return Ok(AstNode::multi_out(parts));
        }
        Ok(first)
    }

    /// The binding level of a binary operator token, loosest = 0.
    /// `None` for tokens that are not infix operators of this dialect.
    fn binary_level(&self, token: &Token) -> Option<(u8, BinaryOp)> {
        if token.category != TokenCategory::Operator {
            return None;
        }
        let (level, op) = match token.lexeme.as_str() {
            "||" => (0, BinaryOp::Or),
            "&&" => (1, BinaryOp::And),
            "|" => (2, BinaryOp::BitOr),
            "^" => (3, BinaryOp::BitXor),
            "&" => (4, BinaryOp::BitAnd),
            "==" => (5, BinaryOp::Eq),
            "!=" => (5, BinaryOp::Ne),
            "<" => (6, BinaryOp::Lt),
            "<=" => (6, BinaryOp::Le),
            ">" => (6, BinaryOp::Gt),
            ">=" => (6, BinaryOp::Ge),
            "<<" => (7, BinaryOp::Shl),
            ">>" => (7, BinaryOp::Shr),
            "+" => (8, BinaryOp::Add),
            "-" => (8, BinaryOp::Sub),
            "*" => (9, BinaryOp::Mul),
            "/" => (9, BinaryOp::Div),
            "%" => (9, BinaryOp::Mod),
            _ => return None,
        };
        // Root-only operators never reach here for numexpr input (the
        // tokenizer already rejected them); the gate is belt and braces.
        if self.dialect != Dialect::Root
            && matches!(op, BinaryOp::Or | BinaryOp::And | BinaryOp::Mod)
        {
            return None;
        }
        Some((level, op))
    }

    /// All binary levels from `||` down to `*`, by precedence climbing:
    /// left-associative because the right side is parsed one level tighter.
    fn parse_infix(&mut self) -> PResult {
        self.parse_binary(0)
    }

    fn parse_binary(&mut self, min_level: u8) -> PResult {
        let mut lhs = self.parse_unary()?;
        while let Some(token) = self.peek() {
            let Some((level, op)) = self.binary_level(token) else {
                break;
            };
            if level < min_level {
                break;
            }
            self.advance();
            let rhs = self.parse_binary(level + 1)?;
            lhs = AstNode::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> PResult {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            self.depth -= 1;
            return Err(self.error_here(
                self.expr_start_expected(),
                Some("expression nests too deeply"),
            ));
        }
        let result = self.parse_unary_inner();
        self.depth -= 1;
        result
    }

    fn parse_unary_inner(&mut self) -> PResult {
        if let Some(t) = self.peek() {
            if t.category == TokenCategory::Operator {
                let op = match t.lexeme.as_str() {
                    "+" => Some(UnaryOp::Plus),
                    "-" => Some(UnaryOp::Minus),
                    "~" => Some(UnaryOp::BitNot),
                    "!" if self.dialect == Dialect::Root => Some(UnaryOp::Not),
                    _ => None,
                };
                if let Some(op) = op {
                    self.advance();
                    let operand = self.parse_unary()?;
                    return Ok(AstNode::unary(op, operand));
                }
            }
        }
        self.parse_power()
    }

    /// power := postfix ("**" unary)?  — right-associative because the
    /// right side re-enters the unary level.
    fn parse_power(&mut self) -> PResult {
        let base = self.parse_postfix()?;
        if self.at_lexeme("**") {
            self.advance();
            let exponent = self.parse_unary()?;
            return Ok(AstNode::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn parse_postfix(&mut self) -> PResult {
        let mut node = self.parse_atom()?;
        loop {
            if self.at_lexeme("(") {
                // A call suffix is only valid on a bare name; scoped calls
                // consume their parentheses in parse_atom.
                match node {
                    AstNode::Symbol { name } => {
                        let args = self.parse_call_args()?;
                        node = AstNode::Call {
                            namespace: None,
                            name,
                            args,
                        };
                    }
                    _ => {
                        return Err(self.error_here(
                            vec!["OPERATOR".to_string(), "end of input".to_string()],
                            Some("this expression is not callable"),
                        ));
                    }
                }
            } else if self.dialect == Dialect::Root && self.at_lexeme("[") {
                self.advance();
                let slice = if self.at_lexeme("]") {
                    AstNode::empty_slice()
                } else {
                    AstNode::slice(self.parse_infix()?)
                };
                self.expect("]")?;
                node = match node {
                    AstNode::Matrix { base, mut slices } => {
                        slices.push(slice);
                        AstNode::Matrix { base, slices }
                    }
                    other => AstNode::Matrix {
                        base: Box::new(other),
                        slices: vec![slice],
                    },
                };
            } else {
                break;
            }
        }
        Ok(node)
    }

    /// arglist := expr ("," expr)*, possibly empty. The opening "(" has not
    /// been consumed yet.
    fn parse_call_args(&mut self) -> Result<Vec<AstNode>, ParseError> {
        self.expect("(")?;
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            args.push(self.parse_infix()?);
            if self.eat(",") {
                continue;
            }
            if self.eat(")") {
                return Ok(args);
            }
            return Err(self.error_here(vec!["','".to_string(), "')'".to_string()], None));
        }
    }

    fn parse_atom(&mut self) -> PResult {
        let Some(t) = self.peek() else {
            return Err(self.error_here(self.expr_start_expected(), None));
        };
        match t.category {
            TokenCategory::Number => {
                let lexeme = t.lexeme.clone();
                self.advance();
                Ok(AstNode::literal(lexeme))
            }
            TokenCategory::Name => {
                let name = t.lexeme.clone();
                self.advance();
                if self.dialect == Dialect::Root && self.at_lexeme("::") {
                    self.advance();
                    let func = match self.peek() {
                        Some(t) if t.category == TokenCategory::Name => {
                            let f = t.lexeme.clone();
                            self.advance();
                            f
                        }
                        _ => {
                            return Err(self.error_here(
                                vec!["NAME".to_string()],
                                Some("'::' must be followed by a function name"),
                            ));
                        }
                    };
                    if !self.at_lexeme("(") {
                        return Err(self.error_here(
                            vec!["'('".to_string()],
                            Some("a scoped name must be called"),
                        ));
                    }
                    let args = self.parse_call_args()?;
                    Ok(AstNode::Call {
                        namespace: Some(name),
                        name: func,
                        args,
                    })
                } else {
                    Ok(AstNode::symbol(name))
                }
            }
            _ if t.lexeme == "(" => {
                self.advance();
                let node = self.parse_toplevel()?;
                self.expect(")")?;
                Ok(node)
            }
            _ => Err(self.error_here(self.expr_start_expected(), None)),
        }
    }
}
