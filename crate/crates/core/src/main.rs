use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use g3lr::algebra::Algebra3LR;
use g3lr::axioms::run_all;
use g3lr::catalog::{builtin, BUILTIN_NAMES};
use g3lr::decompose::decompose_unchecked;
use g3lr::io::{emit_instance, parse_instance, ParseError};
use g3lr::report::{
    build_report, decomposition_out, invariant_failures, render_axioms, render_classes, render_decomposition,
    render_simplicity, simplicity, to_json, Report,
};

const OK: u8 = 0;
const AXIOMS: u8 = 2;
const PARSE: u8 = 3;
const INTERNAL: u8 = 4;

/// Graded 3-Lie-Rinehart algebras: validation, connection classes and
/// decompositions.
#[derive(Parser)]
#[command(name = "g3lr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom on basis tuples.
    Validate { file: PathBuf },
    /// Print supports and connection classes.
    Classes { file: PathBuf },
    /// Ideals, complements, tightness, pairing and fine decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// gr-simplicity verdicts for L and A.
    Simple { file: PathBuf },
    /// Write the full JSON report.
    Report {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a built-in instance file.
    Builtin {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(BUILTIN_NAMES))]
        name: String,
        #[arg(long)]
        emit: PathBuf,
    },
}

fn load(path: &Path) -> Result<(Algebra3LR, Vec<u8>), ExitCode> {
    let bytes = std::fs::read(path).map_err(|source| {
        let e = ParseError::Io {
            path: path.display().to_string(),
            source,
        };
        eprintln!("parse error: {e}");
        ExitCode::from(PARSE)
    })?;
    let text = String::from_utf8_lossy(&bytes);
    match parse_instance(&text) {
        Ok(alg) => Ok((alg, bytes)),
        Err(e) => {
            eprintln!("parse error: {e}");
            Err(ExitCode::from(PARSE))
        }
    }
}

/// Prints the axiom report and stops when the instance is invalid.
fn gate(alg: &Algebra3LR) -> Result<(), ExitCode> {
    let axioms = run_all(alg);
    if axioms.pass() {
        return Ok(());
    }
    eprint!("{}", render_axioms(alg, &axioms));
    eprintln!("refusing to continue on an invalid instance");
    Err(ExitCode::from(AXIOMS))
}

fn invariants_ok(failures: &[String]) -> ExitCode {
    if failures.is_empty() {
        return ExitCode::from(OK);
    }
    for f in failures {
        eprintln!("internal invariant failed: {f}");
    }
    ExitCode::from(INTERNAL)
}

fn write(path: &Path, text: &str) -> ExitCode {
    match std::fs::write(path, text) {
        Ok(()) => ExitCode::from(OK),
        Err(e) => {
            eprintln!("cannot write {}: {e}", path.display());
            ExitCode::from(INTERNAL)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let (alg, _) = load(&file)?;
            let axioms = run_all(&alg);
            print!("{}", render_axioms(&alg, &axioms));
            Ok(ExitCode::from(if axioms.pass() { OK } else { AXIOMS }))
        }
        Command::Classes { file } => {
            let (alg, bytes) = load(&file)?;
            gate(&alg)?;
            let report = build_report(&alg, &bytes);
            let (Some(s), Some(c)) = (&report.supports, &report.classes) else {
                return Err(ExitCode::from(INTERNAL));
            };
            print!("{}", render_classes(s, c));
            Ok(invariants_ok(&report.invariant_failures))
        }
        Command::Decompose { file, json } => {
            let (alg, _) = load(&file)?;
            gate(&alg)?;
            let r = decompose_unchecked(&alg);
            let out = decomposition_out(&alg, &r);
            if json {
                print!("{}", to_json(&out));
            } else {
                print!("{}", render_decomposition(&out));
            }
            Ok(invariants_ok(&invariant_failures(&alg, &r)))
        }
        Command::Simple { file } => {
            let (alg, _) = load(&file)?;
            gate(&alg)?;
            print!("{}", render_simplicity(&simplicity(&alg)));
            Ok(ExitCode::from(OK))
        }
        Command::Report { file, out } => {
            let (alg, bytes) = load(&file)?;
            let report: Report = build_report(&alg, &bytes);
            let code = write(&out, &to_json(&report));
            if code != ExitCode::from(OK) {
                return Ok(code);
            }
            if !report.axioms.pass {
                return Ok(ExitCode::from(AXIOMS));
            }
            Ok(invariants_ok(&report.invariant_failures))
        }
        Command::Builtin { name, emit } => match builtin(&name) {
            Ok(alg) => Ok(write(&emit, &emit_instance(&alg))),
            Err(e) => {
                eprintln!("{e}");
                Ok(ExitCode::from(INTERNAL))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE } else { OK });
        }
    };
    match run(cli) {
        Ok(code) | Err(code) => code,
    }
}
