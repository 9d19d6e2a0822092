//! Shared fixtures for the integration suites: the checked-in corpora, a
//! seeded random tree generator used by the oracle-equivalence fuzz, and
//! small helpers.

#![allow(dead_code)]

use hepexpr::{AstNode, BinaryOp, EvalEnv, UnaryOp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const ROOT_CORPUS: &str = include_str!("../data/root_corpus.txt");
pub const NUMEXPR_CORPUS: &str = include_str!("../data/numexpr_corpus.txt");

/// Corpus pairs that parse to the same tree on purpose (grouping parens
/// leave no node). Every other pair of corpus lines must differ as trees.
pub const PAREN_VARIANTS: &[(&str, &str)] = &[("1+2*3", "1+(2*3)")];

pub fn corpus_lines(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn is_declared_variant(a: &str, b: &str) -> bool {
    PAREN_VARIANTS
        .iter()
        .any(|(x, y)| (*x == a && *y == b) || (*x == b && *y == a))
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale
}

/// Symbols every generated tree may reference, with their fixed values.
pub const GEN_SYMBOLS: &[(&str, f64)] = &[
    ("x", 1.25),
    ("y", -0.75),
    ("z", 3.0),
    ("w", 0.5),
    ("n_mu", 2.0),
    ("weight", 0.8),
];

pub fn gen_env() -> EvalEnv {
    GEN_SYMBOLS.iter().map(|&(n, v)| (n, v)).collect()
}

/// Literal spellings the generator draws from; varied on purpose so that
/// verbatim-lexeme emission gets exercised.
const GEN_LITERALS: &[&str] = &[
    "0", "1", "2", "3", "7", "10", "0.5", "1.25", "2.75", ".5", "1e2", "2.5E-1", "12.",
];

/// Registry functions by call shape: (namespace, name, arity). Plain and
/// namespaced spellings both appear so that respelling is part of the fuzz.
const GEN_FUNCTIONS: &[(Option<&str>, &str, usize)] = &[
    (Some("TMath"), "Sqrt", 1),
    (Some("TMath"), "Abs", 1),
    (Some("TMath"), "Exp", 1),
    (Some("TMath"), "ATan2", 2),
    (Some("TMath"), "Min", 2),
    (Some("TMath"), "Power", 2),
    (None, "sqrt", 1),
    (None, "abs", 1),
    (None, "sin", 1),
    (None, "cos", 1),
    (None, "tanh", 1),
    (None, "arctan", 1),
    (None, "arctan2", 2),
];

/// Subset of [`GEN_FUNCTIONS`] that has a numexpr spelling, for trees that
/// must emit in every dialect.
const NUMEXPR_SAFE_FUNCTIONS: &[(Option<&str>, &str, usize)] = &[
    (Some("TMath"), "Sqrt", 1),
    (Some("TMath"), "Abs", 1),
    (Some("TMath"), "Exp", 1),
    (Some("TMath"), "ATan2", 2),
    (None, "sqrt", 1),
    (None, "abs", 1),
    (None, "sin", 1),
    (None, "cos", 1),
    (None, "tanh", 1),
    (None, "arctan", 1),
    (None, "arctan2", 2),
];

const CMP_OPS: &[BinaryOp] = &[
    BinaryOp::Eq,
    BinaryOp::Ne,
    BinaryOp::Lt,
    BinaryOp::Le,
    BinaryOp::Gt,
    BinaryOp::Ge,
];

const ARITH_OPS: &[BinaryOp] = &[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];

const INT_OPS: &[BinaryOp] = &[
    BinaryOp::BitAnd,
    BinaryOp::BitOr,
    BinaryOp::BitXor,
    BinaryOp::Shl,
    BinaryOp::Shr,
    BinaryOp::Mod,
];

/// Random expression trees for the oracle fuzz: arithmetic, comparisons and
/// registry calls anywhere; logical operators only over comparison-valued
/// operands; bitwise/shift/modulo only over integral literals.
pub struct TreeGen {
    pub rng: ChaCha8Rng,
    numexpr_compatible: bool,
}

impl TreeGen {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        TreeGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            numexpr_compatible: false,
        }
    }

    /// Restrict generation to trees the numexpr emitter accepts: no
    /// bitwise/shift/modulo nodes and only functions with a numexpr
    /// spelling.
    pub fn numexpr_compatible(seed: u64) -> Self {
        let mut gen = TreeGen::new(seed);
        gen.numexpr_compatible = true;
        gen
    }

    fn leaf(&mut self) -> AstNode {
        if self.rng.random_bool(0.5) {
            let lex = GEN_LITERALS[self.rng.random_range(0..GEN_LITERALS.len())];
            AstNode::literal(lex)
        } else {
            let (name, _) = GEN_SYMBOLS[self.rng.random_range(0..GEN_SYMBOLS.len())];
            AstNode::symbol(name)
        }
    }

    fn comparison(&mut self, depth: usize) -> AstNode {
        let op = CMP_OPS[self.rng.random_range(0..CMP_OPS.len())];
        AstNode::binary(op, self.expr(depth), self.expr(depth))
    }

    fn integral_literal(&mut self, range: std::ops::Range<i64>) -> AstNode {
        AstNode::literal(self.rng.random_range(range).to_string())
    }

    /// An arithmetic-valued expression of depth at most `depth`.
    pub fn expr(&mut self, depth: usize) -> AstNode {
        if depth == 0 {
            return self.leaf();
        }
        match self.rng.random_range(0..10) {
            0..=2 => {
                let op = ARITH_OPS[self.rng.random_range(0..ARITH_OPS.len())];
                AstNode::binary(op, self.expr(depth - 1), self.expr(depth - 1))
            }
            3 => {
                let op = if self.rng.random_bool(0.7) {
                    UnaryOp::Minus
                } else {
                    UnaryOp::Plus
                };
                AstNode::unary(op, self.expr(depth - 1))
            }
            4 => {
                // Power with tame literal base and exponent.
                let base = AstNode::literal(
                    ["0.5", "1.5", "2", "3"][self.rng.random_range(0..4)],
                );
                let exp = self.integral_literal(0..4);
                AstNode::binary(BinaryOp::Pow, base, exp)
            }
            5 => self.comparison(depth - 1),
            6 if !self.numexpr_compatible => {
                // Bitwise family over integral literals only.
                let op = INT_OPS[self.rng.random_range(0..INT_OPS.len())];
                let left = self.integral_literal(0..64);
                let right = match op {
                    BinaryOp::Shl | BinaryOp::Shr => self.integral_literal(0..8),
                    BinaryOp::Mod => self.integral_literal(1..16),
                    _ => self.integral_literal(0..64),
                };
                AstNode::binary(op, left, right)
            }
            6 => self.comparison(depth - 1),
            7 => {
                // Logical operators take comparison-valued operands.
                if self.rng.random_bool(0.3) {
                    AstNode::unary(UnaryOp::Not, self.comparison(depth - 1))
                } else {
                    let op = if self.rng.random_bool(0.5) {
                        BinaryOp::And
                    } else {
                        BinaryOp::Or
                    };
                    AstNode::binary(op, self.comparison(depth - 1), self.comparison(depth - 1))
                }
            }
            8 => {
                let pool = if self.numexpr_compatible {
                    NUMEXPR_SAFE_FUNCTIONS
                } else {
                    GEN_FUNCTIONS
                };
                let (ns, name, arity) = pool[self.rng.random_range(0..pool.len())];
                let args = (0..arity).map(|_| self.expr(depth - 1)).collect();
                AstNode::call(ns, name, args)
            }
            _ => self.leaf(),
        }
    }
}
