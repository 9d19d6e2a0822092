//! Parse and translate HEP selection/weight expressions between dialects.
//!
//! The crate parses the ROOT formula mini-language (`root`) and the
//! restricted array-expression language (`numexpr`) into one shared
//! expression tree, and renders that tree back out as `root`, `numexpr` or
//! plain python-style array text:
//!
//! ```
//! use hepexpr::{emit, parse, Dialect};
//!
//! let tree = parse("TMath::Sqrt(px*px + py*py)", Dialect::Root).unwrap();
//! assert_eq!(
//!     emit(&tree, Dialect::Numexpr).unwrap(),
//!     "sqrt(((px)*(px))+((py)*(py)))"
//! );
//! ```
//!
//! Parsing is deterministic and linear in input length; the [`bench`]
//! module measures that directly. [`eval`] provides a reference scalar
//! evaluator used as the semantics oracle in the test suites.

pub mod ast;
pub mod bench;
pub mod dialect;
pub mod emit;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod registry;

pub use ast::{ast_equal, AstNode, BinaryOp, UnaryOp, MULTI_OUT};
pub use bench::{build_input, run_bench, BenchError, BenchRecord};
pub use dialect::Dialect;
pub use emit::{emit, EmitError};
pub use eval::{evaluate, EvalEnv, EvalError};
pub use lexer::{tokenize, ParseError, SourcePosition, Token, TokenCategory};
pub use parser::parse;
pub use registry::{FunctionDescriptor, Registry};
