//! Parse-time scaling harness.
//!
//! Inputs grow by joining copies of a base expression with `" + "`, so the
//! text stays valid at every size; timing covers parsing only. Results go
//! out as CSV with the exact header `repeats,chars,seconds,trials`.

use std::fmt;
use std::time::Instant;

use crate::dialect::Dialect;
use crate::lexer::ParseError;
use crate::parser::parse;

/// The realistic selection/weight expression used by default; 54 characters.
pub const DEFAULT_BASE: &str = "((weight * (n_mu > 0)) * ((tt_cat + tt_cat + tt_cat)))";

/// Joiner between repeated copies of the base expression.
pub const JOINER: &str = " + ";

/// One measurement: the base expression repeated `repeats` times produced
/// an input of `chars` characters that parsed in a median `seconds` over
/// `trials` runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub repeats: usize,
    pub chars: usize,
    pub seconds: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchError {
    ZeroRepeats,
    EmptyRepeatSet,
    ZeroTrials,
    Parse(ParseError),
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::ZeroRepeats => write!(f, "repeat count must be positive"),
            BenchError::EmptyRepeatSet => write!(f, "repeat set must be non-empty"),
            BenchError::ZeroTrials => write!(f, "trial count must be positive"),
            BenchError::Parse(e) => write!(f, "base expression does not parse: {e}"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<ParseError> for BenchError {
    fn from(e: ParseError) -> Self {
        BenchError::Parse(e)
    }
}

/// Join `repeats` copies of `base` with `" + "`. The base must itself parse
/// in the root dialect for the result to parse; this function only builds
/// the string.
pub fn build_input(base: &str, repeats: usize) -> Result<String, BenchError> {
    if repeats == 0 {
        return Err(BenchError::ZeroRepeats);
    }
    let mut s = String::with_capacity(base.len() * repeats + JOINER.len() * (repeats - 1));
    for i in 0..repeats {
        if i > 0 {
            s.push_str(JOINER);
        }
        s.push_str(base);
    }
    Ok(s)
}

/// Time root-dialect parsing of `base` repeated by each count in
/// `repeat_set` (deduplicated, ascending). `seconds` per record is the
/// median over `trials` runs after one discarded warm-up parse; string
/// construction is excluded from the clock.
pub fn run_bench(
    base: &str,
    repeat_set: &[usize],
    trials: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    if repeat_set.is_empty() {
        return Err(BenchError::EmptyRepeatSet);
    }
    if trials == 0 {
        return Err(BenchError::ZeroTrials);
    }
    if repeat_set.contains(&0) {
        return Err(BenchError::ZeroRepeats);
    }
    parse(base, Dialect::Root)?;

    let mut repeat_set: Vec<usize> = repeat_set.to_vec();
    repeat_set.sort_unstable();
    repeat_set.dedup();

    let mut records = Vec::with_capacity(repeat_set.len());
    for &repeats in &repeat_set {
        let input = build_input(base, repeats)?;
        parse(&input, Dialect::Root)?; // warm-up, discarded
        let mut times = Vec::with_capacity(trials);
        for _ in 0..trials {
            let start = Instant::now();
            let tree = parse(&input, Dialect::Root)?;
            times.push(start.elapsed().as_secs_f64());
            std::hint::black_box(tree);
        }
        records.push(BenchRecord {
            repeats,
            chars: input.chars().count(),
            seconds: median(&mut times),
            trials,
        });
    }
    Ok(records)
}

fn median(times: &mut [f64]) -> f64 {
    times.sort_by(|a, b| a.total_cmp(b));
    let n = times.len();
    if n % 2 == 1 {
        times[n / 2]
    } else {
        (times[n / 2 - 1] + times[n / 2]) / 2.0
    }
}

/// Render records as CSV with a `repeats,chars,seconds,trials` header.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("repeats,chars,seconds,trials\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.repeats, r.chars, r.seconds, r.trials
        ));
    }
    out
}

/// Least-squares slope of log(seconds) against log(chars); the scaling
/// exponent of parse time in input length.
pub fn log_log_slope(records: &[BenchRecord]) -> f64 {
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| ((r.chars as f64).ln(), r.seconds.ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let var: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    cov / var
}
