//! The `bicx` command line: build models, run the blow-up and
//! projective-bundle constructions, and print cohomology diamonds or JSON.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 on invariant violations.

mod inputs;
mod output;

use std::ffi::OsString;
use std::io::Write;

use bicx_core::bicomplex::{is_e1_isomorphism, random_complex, to_text, validate, DoubleComplex, Window};
use bicx_core::geometry::{blow_up, projective_bundle};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use inputs::{morphism_to_text, parse_morphism, resolve, Resolved};
pub use output::{selections, Selection, DEFAULT_TABLES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Invariant(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Invariant(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bicx", version, about = "Cohomology of double complexes with real structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Comma-separated: e<r>, einf, derham, bc, aeppli, rows
    #[arg(long, value_delimiter = ',')]
    tables: Vec<String>,
    /// One JSON object per table and line
    #[arg(long)]
    json: bool,
    /// Validate the inputs and stop
    #[arg(long)]
    validate_only: bool,
    /// Also print the pages E_1 .. E_r
    #[arg(long)]
    max_page: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tables of a preset or model file
    Model {
        model: String,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Blow-up of an ambient model along a center of codimension r
    Blowup {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        center: String,
        #[arg(long, allow_hyphen_values = true)]
        codim: i64,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Projective bundle of rank n over a base
    Projbundle {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        rank: i64,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Whether a morphism file describes an E1-isomorphism
    CheckE1iso {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        json: bool,
    },
    /// Tables of a seeded random complex
    Random {
        #[arg(long)]
        seed: u64,
        /// pmin,pmax,qmin,qmax
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Print a model as a serialized complex
    Export { model: String },
}

fn check(a: &DoubleComplex, what: &str) -> Result<(), CliError> {
    match validate(a).first() {
        Some(v) => Err(CliError::Invariant(format!("{what}: {v}"))),
        None => Ok(()),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

fn emit(a: &DoubleComplex, args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    check(a, "result")?;
    let selected = selections(&args.tables, args.max_page)?;
    if args.validate_only {
        writeln!(out, "valid: total dimension {}, window {}", a.total_dim(), a.window()).map_err(io)?;
        return Ok(());
    }
    output::print_tables(a, &selected, args.json, out).map_err(io)
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let v: Vec<i32> = s
        .split(',')
        .map(|x| x.trim().parse::<i32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("--window expects pmin,pmax,qmin,qmax, got '{s}'")))?;
    match v[..] {
        [a, b, c, d] => Ok(Window::new(a, b, c, d)),
        _ => Err(CliError::Input(format!("--window expects four integers, got '{s}'"))),
    }
}

#[derive(Serialize)]
struct JsonWitness {
    p: i32,
    q: i32,
    source_dim: usize,
    target_dim: usize,
    rank: usize,
}

#[derive(Serialize)]
struct JsonE1 {
    schema: u32,
    kind: &'static str,
    is_e1_isomorphism: bool,
    witnesses: Vec<JsonWitness>,
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Model { model, tables } => {
            let r = resolve(&model)?;
            emit(&r.complex, &tables, out)
        }
        Command::Blowup {
            ambient,
            center,
            codim,
            tables,
        } => {
            let x = resolve(&ambient)?;
            let z = resolve(&center)?;
            if z.dimension + codim as i32 != x.dimension {
                writeln!(
                    err,
                    "warning: center dimension {} plus codimension {codim} differs from ambient dimension {}",
                    z.dimension, x.dimension
                )
                .map_err(io)?;
            }
            let b = blow_up(&x.complex, &z.complex, codim).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&b.total, &tables, out)
        }
        Command::Projbundle { base, rank, tables } => {
            let x = resolve(&base)?;
            let (k, _) = projective_bundle(&x.complex, rank).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&k, &tables, out)
        }
        Command::CheckE1iso { morphism, json } => {
            let f = inputs::read_morphism(&morphism)?;
            let (ok, report) = is_e1_isomorphism(&f);
            if json {
                let record = JsonE1 {
                    schema: 1,
                    kind: "e1iso",
                    is_e1_isomorphism: ok,
                    witnesses: report
                        .witnesses
                        .iter()
                        .map(|w| JsonWitness {
                            p: w.at.0,
                            q: w.at.1,
                            source_dim: w.source_dim,
                            target_dim: w.target_dim,
                            rank: w.rank,
                        })
                        .collect(),
                };
                writeln!(out, "{}", serde_json::to_string(&record).expect("report serializes")).map_err(io)
            } else {
                writeln!(out, "E1-isomorphism: {}", if ok { "yes" } else { "no" }).map_err(io)?;
                write!(out, "{report}").map_err(io)
            }
        }
        Command::Random {
            seed,
            window,
            size,
            tables,
        } => {
            let w = parse_window(&window)?;
            let a = random_complex(seed, w, size).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&a, &tables, out)
        }
        Command::Export { model } => {
            let r = resolve(&model)?;
            check(&r.complex, &model)?;
            write!(out, "{}", to_text(&r.complex)).map_err(io)
        }
    }
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let first = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            let _ = writeln!(err, "{}", first.trim());
            return 1;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
