//! Command-line front end: `convert` translates one expression between
//! dialects, `bench` measures parse-time scaling.
//!
//! Exit codes: 0 success, 1 parse error, 2 emission error, 3 usage error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use hepexpr::{bench, emit, parse, Dialect, EmitError, ParseError};

#[derive(Parser)]
#[command(name = "hepexpr", version, about = "Translate expressions between the root, numexpr and python dialects", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an expression from one dialect to another
    Convert(ConvertArgs),
    /// Measure parse time as the input expression grows
    Bench(BenchArgs),
}

#[derive(Args)]
struct ConvertArgs {
    /// Source dialect: root or numexpr
    #[arg(long = "from", value_name = "DIALECT")]
    from: String,
    /// Target dialect: root, numexpr or python
    #[arg(long = "to", value_name = "DIALECT")]
    to: String,
    /// The expression to convert
    #[arg(long, value_name = "STR", conflicts_with = "input")]
    expr: Option<String>,
    /// Read the expression from a file instead (stdin when neither --expr
    /// nor --input is given)
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the converted expression here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Treat the input as one expression per line; stops at the first error
    #[arg(long)]
    batch: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Base expression (root dialect)
    #[arg(long, value_name = "EXPR", default_value = bench::DEFAULT_BASE)]
    base: String,
    /// Comma-separated repeat counts
    #[arg(long, value_name = "LIST", default_value = "1,2,4,8,16,32,64,128,256")]
    repeats: String,
    /// Timed parses per repeat count (the median is reported)
    #[arg(long, value_name = "N", default_value_t = 5)]
    trials: usize,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

enum CliError {
    Parse(ParseError),
    Emit(EmitError),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Emit(_) => 2,
            CliError::Usage(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(e) => e.to_string(),
            CliError::Emit(e) => e.to_string(),
            CliError::Usage(msg) => msg.clone(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<EmitError> for CliError {
    fn from(e: EmitError) -> Self {
        CliError::Emit(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not usage errors.
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let result = match cli.command {
        Command::Convert(args) => convert(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hepexpr: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn parse_source_dialect(name: &str) -> Result<Dialect, CliError> {
    let dialect: Dialect = name
        .parse()
        .map_err(|e| CliError::Usage(format!("--from: {e}")))?;
    if !dialect.is_parse_source() {
        return Err(CliError::Usage(format!(
            "--from: the {dialect} dialect can only be emitted, not parsed"
        )));
    }
    Ok(dialect)
}

fn convert(args: ConvertArgs) -> Result<(), CliError> {
    let from = parse_source_dialect(&args.from)?;
    let to: Dialect = args
        .to
        .parse()
        .map_err(|e| CliError::Usage(format!("--to: {e}")))?;

    let text = match (&args.expr, &args.input) {
        (Some(expr), None) => expr.clone(),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("--input {}: {e}", path.display()))
        })?,
        (None, None) => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
            buf
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --expr with --input"),
    };

    let mut out = String::new();
    if args.batch {
        for (lineno, line) in text.lines().enumerate() {
            match convert_one(line, from, to) {
                Ok(converted) => {
                    out.push_str(&converted);
                    out.push('\n');
                }
                Err(e) => {
                    // Emit the lines that succeeded, then the diagnostic.
                    write_output(&args.output, &out)?;
                    return Err(match e {
                        CliError::Parse(p) => CliError::Parse(ParseError {
                            message: format!("input line {}: {}", lineno + 1, p.message),
                            ..p
                        }),
                        other => other,
                    });
                }
            }
        }
    } else {
        out.push_str(&convert_one(&text, from, to)?);
        out.push('\n');
    }
    write_output(&args.output, &out)
}

fn convert_one(text: &str, from: Dialect, to: Dialect) -> Result<String, CliError> {
    let tree = parse(text, from)?;
    Ok(emit(&tree, to)?)
}

fn write_output(target: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match target {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("--output {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    let repeats: Vec<usize> = args
        .repeats
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("--repeats: bad count {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    let records = bench::run_bench(&args.base, &repeats, args.trials).map_err(|e| match e {
        bench::BenchError::Parse(p) => CliError::Parse(p),
        other => CliError::Usage(format!("--repeats/--trials: {other}")),
    })?;
    let csv = bench::to_csv(&records);
    write_output(&args.csv, &csv)
}
