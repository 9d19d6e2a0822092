//! Renders expression trees back into dialect text by recursive descent,
//! stitching the final string together from the pieces each child emits.
//!
//! Output is fully parenthesized under one rule: both operands of a binary
//! operator and the operand of a unary operator are always wrapped in
//! parentheses; atoms, call arguments and subscript indexes are not. The
//! one addition is that a multiple-output expression is parenthesized
//! wherever it appears as a subexpression, since a bare `a : b` only parses
//! at top level. Re-parsing emitted text therefore reconstructs the tree
//! exactly (modulo function spellings, which normalize through the
//! registry).
//!
//! Targets without logical operators get the elementwise mapping
//! `&&` -> `&`, `||` -> `|`, `!` -> `~`. The root target is total: any
//! well-formed tree emits. The numexpr target rejects multiple output,
//! subscripts and `%`; numexpr and python reject namespaced calls they
//! cannot translate through the registry.

use std::fmt;

use crate::ast::{AstNode, BinaryOp, UnaryOp};
use crate::dialect::Dialect;
use crate::registry::Registry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmitError {
    /// The tree contains a construct the target dialect cannot express.
    UnsupportedConstruct { construct: String, target: Dialect },
    /// A namespaced call is absent from the registry and the target is not
    /// root, so there is no way to spell it.
    UnknownFunction { name: String, target: Dialect },
}

impl fmt::Display for EmitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmitError::UnsupportedConstruct { construct, target } => {
                write!(f, "cannot emit {construct} in the {target} dialect")
            }
            EmitError::UnknownFunction { name, target } => write!(
                f,
                "unknown function '{name}' has no spelling in the {target} dialect"
            ),
        }
    }
}

impl std::error::Error for EmitError {}

type Emit = Result<(), EmitError>;

/// Render `node` as an expression string in `target`.
pub fn emit(node: &AstNode, target: Dialect) -> Result<String, EmitError> {
    let mut out = String::new();
    render(node, target, &mut out)?;
    Ok(out)
}

fn unsupported(construct: impl Into<String>, target: Dialect) -> EmitError {
    EmitError::UnsupportedConstruct {
        construct: construct.into(),
        target,
    }
}

fn render(node: &AstNode, target: Dialect, out: &mut String) -> Emit {
    match node {
        AstNode::Literal { lexeme, .. } => {
            out.push_str(lexeme);
            Ok(())
        }
        AstNode::Symbol { name } => {
            out.push_str(name);
            Ok(())
        }
        AstNode::UnaryOp { op, operand } => {
            out.push_str(unary_symbol(*op, target));
            wrapped(operand, target, out)
        }
        AstNode::BinaryOp { op, left, right } => {
            wrapped(left, target, out)?;
            out.push_str(binary_symbol(*op, target)?);
            wrapped(right, target, out)
        }
        AstNode::Call { .. } if node.is_multi_out() => render_multi_out(node, target, out),
        AstNode::Call {
            namespace,
            name,
            args,
        } => render_call(namespace.as_deref(), name, args, target, out),
        AstNode::Matrix { base, slices } => {
            if target == Dialect::Numexpr {
                return Err(unsupported("a subscript expression", target));
            }
            if matches!(
                base.as_ref(),
                AstNode::BinaryOp { .. } | AstNode::UnaryOp { .. }
            ) || base.is_multi_out()
            {
                wrapped(base, target, out)?;
            } else {
                render(base, target, out)?;
            }
            for slice in slices {
                let AstNode::Slice { index } = slice else {
                    return Err(unsupported(
                        format!("a {} node outside a subscript", slice.kind_name()),
                        target,
                    ));
                };
                match index.as_ref() {
                    AstNode::Empty => out.push_str(match target {
                        Dialect::Python => "[:]",
                        _ => "[]",
                    }),
                    idx => {
                        out.push('[');
                        subexpr(idx, target, out)?;
                        out.push(']');
                    }
                }
            }
            Ok(())
        }
        AstNode::Slice { .. } | AstNode::Empty => Err(unsupported(
            format!("a bare {} node outside a subscript", node.kind_name()),
            target,
        )),
    }
}

/// Render a child of a unary/binary operator: always parenthesized.
fn wrapped(node: &AstNode, target: Dialect, out: &mut String) -> Emit {
    out.push('(');
    render(node, target, out)?;
    out.push(')');
    Ok(())
}

/// Render a call argument or subscript index: bare, except that a
/// multiple-output expression needs parentheses to survive re-parsing.
fn subexpr(node: &AstNode, target: Dialect, out: &mut String) -> Emit {
    if node.is_multi_out() {
        wrapped(node, target, out)
    } else {
        render(node, target, out)
    }
}

fn render_multi_out(node: &AstNode, target: Dialect, out: &mut String) -> Emit {
    if target != Dialect::Root {
        return Err(unsupported("a multiple-output expression", target));
    }
    let AstNode::Call { args, .. } = node else {
        unreachable!("is_multi_out only matches Call")
    };
    for (i, part) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(" : ");
        }
        subexpr(part, target, out)?;
    }
    Ok(())
}

fn render_call(
    namespace: Option<&str>,
    name: &str,
    args: &[AstNode],
    target: Dialect,
    out: &mut String,
) -> Emit {
    let registry = Registry::global();
    let rendered_name = match namespace {
        Some(ns) => match registry.lookup_source(name, namespace, Dialect::Root) {
            Some(desc) => match desc.spelling(target) {
                Some(spelling) => spelling.to_string(),
                None => {
                    return Err(unsupported(
                        format!("the function '{ns}::{name}' (no {target} spelling)"),
                        target,
                    ));
                }
            },
            None if target == Dialect::Root => format!("{ns}::{name}"),
            None => {
                return Err(EmitError::UnknownFunction {
                    name: format!("{ns}::{name}"),
                    target,
                });
            }
        },
        // Plain names translate when the registry knows them under their
        // numexpr spelling and pass through verbatim otherwise: a plain
        // name is syntactically valid in every dialect.
        None => match registry.lookup_source(name, None, Dialect::Numexpr) {
            Some(desc) => match desc.spelling(target) {
                Some(spelling) => spelling.to_string(),
                None => {
                    return Err(unsupported(
                        format!("the function '{name}' (no {target} spelling)"),
                        target,
                    ));
                }
            },
            None => name.to_string(),
        },
    };
    out.push_str(&rendered_name);
    out.push('(');
    for (i, arg) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        subexpr(arg, target, out)?;
    }
    out.push(')');
    Ok(())
}

fn unary_symbol(op: UnaryOp, target: Dialect) -> &'static str {
    match (op, target) {
        (UnaryOp::Not, Dialect::Numexpr | Dialect::Python) => "~",
        _ => op.symbol(),
    }
}

fn binary_symbol(op: BinaryOp, target: Dialect) -> Result<&'static str, EmitError> {
    Ok(match (op, target) {
        (BinaryOp::And, Dialect::Numexpr | Dialect::Python) => "&",
        (BinaryOp::Or, Dialect::Numexpr | Dialect::Python) => "|",
        (BinaryOp::Mod, Dialect::Numexpr) => {
            return Err(unsupported("the '%' (modulo) operator", Dialect::Numexpr));
        }
        _ => op.symbol(),
    })
}
