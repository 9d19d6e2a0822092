//! Cross-module invariants: determinism, whitespace and parenthesization
//! neutrality, dialect containment, equality laws, emission round trips and
//! the evaluation oracle over randomly generated trees.

mod common;

use common::{corpus_lines, gen_env, rel_close, TreeGen, NUMEXPR_CORPUS, ROOT_CORPUS};
use hepexpr::{
    ast_equal, bench, emit, evaluate, parse, tokenize, AstNode, BinaryOp, Dialect, UnaryOp,
};
use rand::Rng;

#[test]
fn parsing_is_deterministic() {
    for text in corpus_lines(ROOT_CORPUS) {
        let a = parse(text, Dialect::Root).unwrap();
        let b = parse(text, Dialect::Root).unwrap();
        assert!(ast_equal(&a, &b), "two parses of {text:?} differ");
    }
}

#[test]
fn whitespace_between_tokens_is_irrelevant() {
    let mut gen = TreeGen::new(11);
    for text in corpus_lines(ROOT_CORPUS) {
        let reference = parse(text, Dialect::Root).unwrap();
        // Rebuild the expression from its own tokens with random spacing.
        let tokens = tokenize(text, Dialect::Root).unwrap();
        let mut spaced = String::new();
        for t in &tokens {
            match gen.rng.random_range(0..4) {
                0 => {}
                1 => spaced.push(' '),
                2 => spaced.push_str("  "),
                _ => spaced.push_str("\n\t"),
            }
            spaced.push_str(&t.lexeme);
        }
        spaced.push(' ');
        let respaced = parse(&spaced, Dialect::Root)
            .unwrap_or_else(|e| panic!("respaced {spaced:?} failed: {e}"));
        assert!(
            ast_equal(&reference, &respaced),
            "spacing changed the tree for {text:?} -> {spaced:?}"
        );
    }
}

#[test]
fn wrapping_in_parens_changes_nothing() {
    for text in corpus_lines(ROOT_CORPUS) {
        let bare = parse(text, Dialect::Root).unwrap();
        let wrapped = parse(&format!("({text})"), Dialect::Root).unwrap();
        assert!(ast_equal(&bare, &wrapped), "parens changed {text:?}");
    }
    for text in corpus_lines(NUMEXPR_CORPUS) {
        let bare = parse(text, Dialect::Numexpr).unwrap();
        let wrapped = parse(&format!("({text})"), Dialect::Numexpr).unwrap();
        assert!(ast_equal(&bare, &wrapped), "parens changed {text:?}");
    }
}

#[test]
fn numexpr_grammar_is_contained_in_root() {
    for text in corpus_lines(NUMEXPR_CORPUS) {
        let as_numexpr = parse(text, Dialect::Numexpr).unwrap();
        let as_root = parse(text, Dialect::Root).unwrap();
        assert!(
            ast_equal(&as_numexpr, &as_root),
            "dialects disagree on {text:?}"
        );
    }
}

#[test]
fn ast_equality_is_an_equivalence_relation() {
    let mut gen = TreeGen::new(23);
    let trees: Vec<AstNode> = (0..120).map(|_| gen.expr(4)).collect();
    for t in &trees {
        assert!(ast_equal(t, t), "reflexivity violated");
        let copy = t.clone();
        assert!(ast_equal(t, &copy) && ast_equal(&copy, t));
    }
    for a in trees.iter().take(30) {
        for b in trees.iter().take(30) {
            assert_eq!(ast_equal(a, b), ast_equal(b, a), "symmetry violated");
            for c in trees.iter().take(10) {
                if ast_equal(a, b) && ast_equal(b, c) {
                    assert!(ast_equal(a, c), "transitivity violated");
                }
            }
        }
    }
}

#[test]
fn emission_round_trips_generated_trees() {
    let mut gen = TreeGen::new(37);
    for i in 0..500 {
        let tree = gen.expr(5);
        let emitted = emit(&tree, Dialect::Root)
            .unwrap_or_else(|e| panic!("tree #{i} failed to emit: {e}"));
        let reparsed = parse(&emitted, Dialect::Root)
            .unwrap_or_else(|e| panic!("tree #{i} reparse of {emitted:?} failed: {e}"));
        assert!(
            ast_equal(&tree, &reparsed),
            "tree #{i} changed through {emitted:?}"
        );
    }
}

/// Undo the elementwise operator mapping on a tree parsed back from
/// numexpr text. Only meaningful for trees that contained no genuine
/// bitwise operators, which the numexpr-compatible generator guarantees.
fn unmap_elementwise(node: &AstNode) -> AstNode {
    match node {
        AstNode::Literal { .. } | AstNode::Symbol { .. } | AstNode::Empty => node.clone(),
        AstNode::UnaryOp { op, operand } => {
            let op = match op {
                UnaryOp::BitNot => UnaryOp::Not,
                other => *other,
            };
            AstNode::unary(op, unmap_elementwise(operand))
        }
        AstNode::BinaryOp { op, left, right } => {
            let op = match op {
                BinaryOp::BitAnd => BinaryOp::And,
                BinaryOp::BitOr => BinaryOp::Or,
                other => *other,
            };
            AstNode::binary(op, unmap_elementwise(left), unmap_elementwise(right))
        }
        AstNode::Call {
            namespace,
            name,
            args,
        } => AstNode::Call {
            namespace: namespace.clone(),
            name: name.clone(),
            args: args.iter().map(unmap_elementwise).collect(),
        },
        AstNode::Matrix { base, slices } => AstNode::Matrix {
            base: Box::new(unmap_elementwise(base)),
            slices: slices.iter().map(unmap_elementwise).collect(),
        },
        AstNode::Slice { index } => AstNode::slice(unmap_elementwise(index)),
    }
}

#[test]
fn cross_dialect_semantics_agree() {
    let env = gen_env();
    let mut gen = TreeGen::numexpr_compatible(41);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 300 {
        attempts += 1;
        assert!(attempts < 10_000, "generator rejects too many trees");
        let tree = gen.expr(5);
        let Ok(reference) = evaluate(&tree, &env) else {
            continue;
        };
        if !reference.is_finite() {
            continue;
        }

        let root_text = emit(&tree, Dialect::Root).unwrap();
        let root_value = evaluate(&parse(&root_text, Dialect::Root).unwrap(), &env).unwrap();
        assert!(
            rel_close(reference, root_value, 1e-12),
            "root path diverged: {reference} vs {root_value} for {root_text:?}"
        );

        let numexpr_text = emit(&tree, Dialect::Numexpr).unwrap();
        let numexpr_tree = parse(&numexpr_text, Dialect::Numexpr).unwrap();
        let numexpr_value = evaluate(&unmap_elementwise(&numexpr_tree), &env).unwrap();
        assert!(
            rel_close(reference, numexpr_value, 1e-12),
            "numexpr path diverged: {reference} vs {numexpr_value} for {numexpr_text:?}"
        );
        checked += 1;
    }
}

#[test]
fn evaluation_is_pure_over_generated_trees() {
    let env = gen_env();
    let mut gen = TreeGen::new(53);
    for _ in 0..200 {
        let tree = gen.expr(4);
        let a = evaluate(&tree, &env);
        let b = evaluate(&tree, &env);
        match (a, b) {
            (Ok(x), Ok(y)) => assert_eq!(x.to_bits(), y.to_bits()),
            (Err(x), Err(y)) => assert_eq!(x, y),
            other => panic!("evaluation not pure: {other:?}"),
        }
    }
}

#[test]
fn parsing_is_thread_safe() {
    let texts: Vec<&str> = corpus_lines(ROOT_CORPUS);
    let reference: Vec<AstNode> = texts
        .iter()
        .map(|t| parse(t, Dialect::Root).unwrap())
        .collect();
    std::thread::scope(|scope| {
        for _ in 0..8 {
            scope.spawn(|| {
                for (text, want) in texts.iter().zip(&reference) {
                    let got = parse(text, Dialect::Root).unwrap();
                    assert!(ast_equal(&got, want));
                }
            });
        }
    });
}

#[test]
fn bench_medians_grow_with_input() {
    // Parse time is non-decreasing in input size, allowing one inversion
    // between the two smallest sizes where timer noise dominates.
    let records = bench::run_bench(bench::DEFAULT_BASE, &[1, 2, 4, 8, 16, 32], 7).unwrap();
    for pair in records.windows(2).skip(1) {
        assert!(
            pair[1].seconds >= pair[0].seconds,
            "parse time shrank from {}x to {}x repeats: {} -> {}",
            pair[0].repeats,
            pair[1].repeats,
            pair[0].seconds,
            pair[1].seconds
        );
    }
}
