//! The expression tree shared by every parser and emitter in the crate.
//!
//! Exactly eight node kinds exist; each grammar production maps onto one of
//! them. Nodes are immutable once built and own their children, so trees are
//! finite, acyclic and freely shareable across threads.
//!
//! A multiple-output expression (`a : b : c` in the root dialect) is encoded
//! as a [`AstNode::Call`] without namespace whose name is the reserved
//! [`MULTI_OUT`] marker. The marker starts with `$`, which no NAME lexeme
//! can, so it never collides with a real function; it is the one exception
//! to the rule that `Call.name` is a valid NAME lexeme.

use std::fmt;

/// Reserved `Call` name carrying a multiple-output expression's parts as
/// arguments. Only the root emitter can render it.
pub const MULTI_OUT: &str = "$multi_out";

/// Width at which [`AstNode::to_sexpr`] switches from one line to indented
/// multi-line output.
const SEXPR_INLINE_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    /// `+x`
    Plus,
    /// `-x`
    Minus,
    /// `!x` (root only)
    Not,
    /// `~x`
    BitNot,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Plus => "+",
            UnaryOp::Minus => "-",
            UnaryOp::Not => "!",
            UnaryOp::BitNot => "~",
        }
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Or,
    And,
    BitOr,
    BitXor,
    BitAnd,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Shl,
    Shr,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Or => "||",
            BinaryOp::And => "&&",
            BinaryOp::BitOr => "|",
            BinaryOp::BitXor => "^",
            BinaryOp::BitAnd => "&",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Shl => "<<",
            BinaryOp::Shr => ">>",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Mod => "%",
            BinaryOp::Pow => "**",
        }
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One node of the expression tree. See the module docs for the encoding of
/// multiple-output expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum AstNode {
    /// A numeric constant. `lexeme` is the verbatim source spelling and is
    /// what equality compares; `value` is its numeric reading.
    Literal { lexeme: String, value: f64 },
    /// A bare identifier (branch or variable name).
    Symbol { name: String },
    UnaryOp {
        op: UnaryOp,
        operand: Box<AstNode>,
    },
    BinaryOp {
        op: BinaryOp,
        left: Box<AstNode>,
        right: Box<AstNode>,
    },
    /// A function call, optionally namespace-qualified (`TMath::Sqrt`).
    Call {
        namespace: Option<String>,
        name: String,
        args: Vec<AstNode>,
    },
    /// A subscripted expression; consecutive subscripts collect into one
    /// node, so `a[0][1]` has two slices. `slices` is non-empty and holds
    /// only `Slice` nodes.
    Matrix {
        base: Box<AstNode>,
        slices: Vec<AstNode>,
    },
    /// One subscript; `index` is `Empty` for the vacant form `a[]`.
    Slice { index: Box<AstNode> },
    /// The vacant subscript index. Appears only inside a `Slice`.
    Empty,
}

impl AstNode {
    /// Build a literal from its source spelling. Panics if the lexeme is not
    /// a valid number, which is a caller bug: the parser only passes NUMBER
    /// lexemes here.
    pub fn literal(lexeme: impl Into<String>) -> AstNode {
        let lexeme = lexeme.into();
        let value = lexeme
            .parse::<f64>()
            .unwrap_or_else(|_| panic!("invalid literal lexeme {lexeme:?}"));
        AstNode::Literal { lexeme, value }
    }

    pub fn symbol(name: impl Into<String>) -> AstNode {
        AstNode::Symbol { name: name.into() }
    }

    pub fn unary(op: UnaryOp, operand: AstNode) -> AstNode {
        AstNode::UnaryOp {
            op,
            operand: Box::new(operand),
        }
    }

    pub fn binary(op: BinaryOp, left: AstNode, right: AstNode) -> AstNode {
        AstNode::BinaryOp {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn call(
        namespace: Option<&str>,
        name: impl Into<String>,
        args: Vec<AstNode>,
    ) -> AstNode {
        AstNode::Call {
            namespace: namespace.map(str::to_string),
            name: name.into(),
            args,
        }
    }

    /// Wrap the parts of a multiple-output expression. `parts` must contain
    /// at least two expressions.
    pub fn multi_out(parts: Vec<AstNode>) -> AstNode {
        debug_assert!(parts.len() >= 2, "multi_out needs at least two parts");
        AstNode::Call {
            namespace: None,
            name: MULTI_OUT.to_string(),
            args: parts,
        }
    }

    pub fn slice(index: AstNode) -> AstNode {
        AstNode::Slice {
            index: Box::new(index),
        }
    }

    pub fn empty_slice() -> AstNode {
        AstNode::Slice {
            index: Box::new(AstNode::Empty),
        }
    }

    /// True for the reserved multiple-output encoding.
    pub fn is_multi_out(&self) -> bool {
        matches!(
            self,
            AstNode::Call {
                namespace: None,
                name,
                ..
            } if name == MULTI_OUT
        )
    }

    /// Short kind name, used by diagnostics.
    pub fn kind_name(&self) -> &'static str {
        match self {
            AstNode::Literal { .. } => "Literal",
            AstNode::Symbol { .. } => "Symbol",
            AstNode::UnaryOp { .. } => "UnaryOp",
            AstNode::BinaryOp { .. } => "BinaryOp",
            AstNode::Call { .. } => "Call",
            AstNode::Matrix { .. } => "Matrix",
            AstNode::Slice { .. } => "Slice",
            AstNode::Empty => "Empty",
        }
    }

    /// Render the tree as s-expression text.
    ///
    /// The format is stable and used by golden tests:
    ///
    /// - `(lit LEXEME)` and `(sym NAME)` for leaves,
    /// - `(OP operand)` for unary and `(OP left right)` for binary operators
    ///   (the child count disambiguates `-` and `+`),
    /// - `(call NAME args...)` with `NAME` namespace-qualified when present,
    /// - `(index BASE slices...)`, `(slice INDEX)` and `(empty)`.
    ///
    /// A node whose rendering fits in 60 characters stays on one line;
    /// otherwise its children are placed on their own lines, indented two
    /// spaces per level.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(&mut out, 0);
        out
    }

    fn sexpr_head(&self) -> String {
        match self {
            AstNode::Literal { lexeme, .. } => format!("lit {lexeme}"),
            AstNode::Symbol { name } => format!("sym {name}"),
            AstNode::UnaryOp { op, .. } => op.symbol().to_string(),
            AstNode::BinaryOp { op, .. } => op.symbol().to_string(),
            AstNode::Call {
                namespace, name, ..
            } => match namespace {
                Some(ns) => format!("call {ns}::{name}"),
                None => format!("call {name}"),
            },
            AstNode::Matrix { .. } => "index".to_string(),
            AstNode::Slice { .. } => "slice".to_string(),
            AstNode::Empty => "empty".to_string(),
        }
    }

    fn children(&self) -> Vec<&AstNode> {
        match self {
            AstNode::Literal { .. } | AstNode::Symbol { .. } | AstNode::Empty => Vec::new(),
            AstNode::UnaryOp { operand, .. } => vec![operand],
            AstNode::BinaryOp { left, right, .. } => vec![left, right],
            AstNode::Call { args, .. } => args.iter().collect(),
            AstNode::Matrix { base, slices } => {
                let mut v = vec![base.as_ref()];
                v.extend(slices.iter());
                v
            }
            AstNode::Slice { index } => vec![index],
        }
    }

    fn sexpr_flat(&self) -> String {
        let mut s = format!("({}", self.sexpr_head());
        for child in self.children() {
            s.push(' ');
            s.push_str(&child.sexpr_flat());
        }
        s.push(')');
        s
    }

    fn write_sexpr(&self, out: &mut String, indent: usize) {
        let flat = self.sexpr_flat();
        if flat.len() <= SEXPR_INLINE_LIMIT {
            out.push_str(&flat);
            return;
        }
        out.push('(');
        out.push_str(&self.sexpr_head());
        for child in self.children() {
            out.push('\n');
            for _ in 0..indent + 2 {
                out.push(' ');
            }
            child.write_sexpr(out, indent + 2);
        }
        out.push(')');
    }
}

/// Structural equality: identical kinds, identical operator/name/lexeme
/// fields and pairwise-equal children in order. Literal comparison is
/// lexeme-level, so `1e3` and `1000.0` differ.
pub fn ast_equal(a: &AstNode, b: &AstNode) -> bool {
    a == b
}
