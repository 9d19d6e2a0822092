//! Reference scalar evaluator with C-style semantics.
//!
//! This is the semantics oracle the test suites compare translations
//! against: comparisons and logical operators yield 1.0/0.0, `&&`/`||`
//! treat any nonzero value as true (both sides are always evaluated —
//! expressions have no side effects), bitwise operators, shifts and `%`
//! demand integral-valued operands and work on 64-bit integers, and `**`
//! is floating-point power. Calls evaluate through the registry's
//! canonical semantics.
//!
//! Subscripts (`Matrix`/`Slice`/`Empty`) and multiple-output expressions
//! have no scalar value and are rejected.

use std::collections::HashMap;
use std::fmt;

use crate::ast::{AstNode, BinaryOp, UnaryOp};
use crate::registry::Registry;

/// Bindings from symbol names to values. Unbound lookups are an error,
/// never a default.
#[derive(Debug, Clone, Default)]
pub struct EvalEnv {
    bindings: HashMap<String, f64>,
}

impl EvalEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.bindings.insert(name.into(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.bindings.get(name).copied()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for EvalEnv {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        EvalEnv {
            bindings: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    UnboundSymbol(String),
    NonIntegralBitwiseOperand { op: &'static str, value: f64 },
    UnknownFunction(String),
    ArityMismatch { name: String, expected: usize, got: usize },
    DomainError(String),
    UnsupportedNode(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundSymbol(name) => write!(f, "symbol '{name}' is not bound"),
            EvalError::NonIntegralBitwiseOperand { op, value } => write!(
                f,
                "operand {value} of '{op}' is not an integral value"
            ),
            EvalError::UnknownFunction(name) => write!(f, "unknown function '{name}'"),
            EvalError::ArityMismatch {
                name,
                expected,
                got,
            } => write!(f, "function '{name}' takes {expected} argument(s), got {got}"),
            EvalError::DomainError(what) => write!(f, "domain error: {what}"),
            EvalError::UnsupportedNode(what) => {
                write!(f, "{what} has no scalar value")
            }
        }
    }
}

impl std::error::Error for EvalError {}

type EResult = Result<f64, EvalError>;

fn truth(v: f64) -> f64 {
    if v != 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Convert an operand of a bitwise/shift/modulo operator to i64, requiring
/// it to be an exactly representable integer.
fn as_integer(op: &'static str, v: f64) -> Result<i64, EvalError> {
    const MIN: f64 = -9_223_372_036_854_775_808.0; // -(2^63)
    const MAX: f64 = 9_223_372_036_854_775_808.0; // 2^63
    if v.fract() == 0.0 && v >= MIN && v < MAX {
        Ok(v as i64)
    } else {
        Err(EvalError::NonIntegralBitwiseOperand { op, value: v })
    }
}

fn shift_amount(op: &'static str, v: f64) -> Result<u32, EvalError> {
    let n = as_integer(op, v)?;
    if (0..64).contains(&n) {
        Ok(n as u32)
    } else {
        Err(EvalError::DomainError(format!(
            "shift amount {n} is outside 0..=63"
        )))
    }
}

/// Evaluate `node` to a double under C-style scalar semantics.
///
/// Every `Symbol` must be bound in `env`; the node must be a single scalar
/// expression (no subscripts, no multiple output). Evaluation is pure:
/// equal inputs give bit-identical results.
pub fn evaluate(node: &AstNode, env: &EvalEnv) -> EResult {
    match node {
        AstNode::Literal { value, .. } => Ok(*value),
        AstNode::Symbol { name } => env
            .get(name)
            .ok_or_else(|| EvalError::UnboundSymbol(name.clone())),
        AstNode::UnaryOp { op, operand } => {
            let v = evaluate(operand, env)?;
            match op {
                UnaryOp::Plus => Ok(v),
                UnaryOp::Minus => Ok(-v),
                UnaryOp::Not => Ok(if v == 0.0 { 1.0 } else { 0.0 }),
                UnaryOp::BitNot => Ok(!as_integer("~", v)? as f64),
            }
        }
        AstNode::BinaryOp { op, left, right } => {
            let l = evaluate(left, env)?;
            let r = evaluate(right, env)?;
            eval_binary(*op, l, r)
        }
        AstNode::Call {
            namespace,
            name,
            args,
        } => {
            if node.is_multi_out() {
                return Err(EvalError::UnsupportedNode(
                    "a multiple-output expression".to_string(),
                ));
            }
            let full_name = match namespace {
                Some(ns) => format!("{ns}::{name}"),
                None => name.clone(),
            };
            let desc = Registry::global()
                .resolve_for_eval(namespace.as_deref(), name)
                .ok_or_else(|| EvalError::UnknownFunction(full_name.clone()))?;
            if desc.arity != args.len() {
                return Err(EvalError::ArityMismatch {
                    name: full_name,
                    expected: desc.arity,
                    got: args.len(),
                });
            }
            let values: Vec<f64> = args
                .iter()
                .map(|a| evaluate(a, env))
                .collect::<Result<_, _>>()?;
            let result = (desc.semantics)(&values);
            // NaN out of non-NaN inputs means the arguments left the
            // function's domain (sqrt of a negative, asin beyond ±1, ...).
            if result.is_nan() && values.iter().all(|v| !v.is_nan()) {
                return Err(EvalError::DomainError(format!(
                    "{full_name}({values:?}) is undefined"
                )));
            }
            Ok(result)
        }
        AstNode::Matrix { .. } | AstNode::Slice { .. } | AstNode::Empty => Err(
            EvalError::UnsupportedNode(format!("a {} node", node.kind_name())),
        ),
    }
}

fn eval_binary(op: BinaryOp, l: f64, r: f64) -> EResult {
    Ok(match op {
        BinaryOp::Or => truth(l).max(truth(r)),
        BinaryOp::And => truth(l) * truth(r),
        BinaryOp::BitOr => (as_integer("|", l)? | as_integer("|", r)?) as f64,
        BinaryOp::BitXor => (as_integer("^", l)? ^ as_integer("^", r)?) as f64,
        BinaryOp::BitAnd => (as_integer("&", l)? & as_integer("&", r)?) as f64,
        BinaryOp::Eq => {
            if l == r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Ne => {
            if l != r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Lt => {
            if l < r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Le => {
            if l <= r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Gt => {
            if l > r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Ge => {
            if l >= r {
                1.0
            } else {
                0.0
            }
        }
        BinaryOp::Shl => (as_integer("<<", l)? << shift_amount("<<", r)?) as f64,
        BinaryOp::Shr => (as_integer(">>", l)? >> shift_amount(">>", r)?) as f64,
        BinaryOp::Add => l + r,
        BinaryOp::Sub => l - r,
        BinaryOp::Mul => l * r,
        BinaryOp::Div => l / r,
        BinaryOp::Mod => {
            let (li, ri) = (as_integer("%", l)?, as_integer("%", r)?);
            li.checked_rem(ri)
                .ok_or_else(|| EvalError::DomainError(format!("{li} % {ri} is undefined")))?
                as f64
        }
        BinaryOp::Pow => l.powf(r),
    })
}
