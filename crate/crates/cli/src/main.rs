use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use symgap_cli::args::{parse_algebra, parse_module, parse_nodes, parse_ranks};
use symgap_cli::render;
use symgap_cli::report::{self, AnalysisRequest, Formula, RealForm, ReportError};
use symgap_core::model::WeightLatticeSpec;
use symgap_core::{Family, LieError};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SKIPPED: u8 = 3;

#[derive(Parser)]
#[command(name = "symgap", version, about = "Exact symmetry-gap computations for parabolic geometries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Real {
    Complex,
    Split,
}

#[derive(clap::Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Harmonic curvature modules, prolongations and upper bounds of one parabolic.
    Analyze {
        /// Simple type, e.g. G2, E8, B3.
        #[arg(long)]
        algebra: String,
        /// Crossed nodes, e.g. 1,3.
        #[arg(long)]
        cross: String,
        /// Restrict to the module of the Hasse word (jk), written j,k or jk.
        #[arg(long)]
        module: Option<String>,
        #[arg(long, value_enum, default_value = "complex")]
        real: Real,
        /// Weight lattice for the split-real sign check: sc, adjoint, sl, pgl, so-split.
        #[arg(long, default_value = "adjoint")]
        lattice: String,
        /// Run the Hodge oracle on C² up to this dimension.
        #[arg(long)]
        oracle_cap: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Upper bounds across a family of parabolics.
    Table {
        /// A, B, C, D, E, F or G.
        #[arg(long)]
        family: String,
        /// Ranks as a..b (inclusive) or a single rank.
        #[arg(long)]
        ranks: String,
        /// Crossed nodes; l and l-k refer to the rank.
        #[arg(long)]
        cross: String,
        /// Compare against a closed formula: projective, ode, conformal, contact.
        #[arg(long)]
        formula: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run internal consistency checks.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cross: String,
        /// Comma-separated: all, jacobi, complex, harmonic, hodge, annihilator, mu, twistor, model.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Largest dim C² for the Hodge oracle.
        #[arg(long, default_value_t = 200_000)]
        oracle_cap: usize,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Input(String),
    Other(String),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Invalid(s) => Failure::Input(s),
            ReportError::Lie(
                e @ (LieError::InvalidType(_)
                | LieError::NodeOutOfRange { .. }
                | LieError::EmptyCross
                | LieError::NotHasseWord { .. }
                | LieError::Unsupported(_)
                | LieError::NoRegularModule),
            ) => Failure::Input(e.to_string()),
            ReportError::Lie(e) => Failure::Other(e.to_string()),
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn emit<T: Serialize>(out: &Output, value: &T, text: impl FnOnce(&T) -> String) -> Result<(), Failure> {
    let s = match out.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => text(value),
    };
    match &out.out {
        Some(p) => std::fs::write(p, s).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn dump<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).map(|v| render::dump(&v)).unwrap_or_default()
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    let mut c = s.chars();
    match (c.next().map(|c| c.to_ascii_uppercase()), c.next()) {
        (Some('A'), None) => Ok(Family::A),
        (Some('B'), None) => Ok(Family::B),
        (Some('C'), None) => Ok(Family::C),
        (Some('D'), None) => Ok(Family::D),
        (Some('E'), None) => Ok(Family::E),
        (Some('F'), None) => Ok(Family::F),
        (Some('G'), None) => Ok(Family::G),
        _ => Err(Failure::Input(format!("invalid family '{s}': expected one of A B C D E F G"))),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Analyze {
            algebra,
            cross,
            module,
            real,
            lattice,
            oracle_cap,
            output,
        } => {
            let t = parse_algebra(&algebra).map_err(input)?;
            let req = AnalysisRequest {
                algebra: t,
                cross: parse_nodes("cross", &cross, None).map_err(input)?,
                module: module.as_deref().map(parse_module).transpose().map_err(input)?,
                real_form: match real {
                    Real::Complex => RealForm::Complex,
                    Real::Split => RealForm::Split,
                },
                lattice: lattice.parse::<WeightLatticeSpec>().map_err(input)?,
                oracle_cap,
            };
            let rep = report::analyze(&req)?;
            emit(&output, &rep, dump)?;
            Ok(if rep.failed() {
                EXIT_FAIL
            } else if rep.oracle_skipped() {
                EXIT_SKIPPED
            } else {
                0
            })
        }
        Cmd::Table {
            family,
            ranks,
            cross,
            formula,
            output,
        } => {
            let family = parse_family(&family)?;
            let ranks = parse_ranks(&ranks).map_err(input)?;
            let formula = formula.as_deref().map(str::parse::<Formula>).transpose().map_err(Failure::Input)?;
            let rep = report::table(family, &ranks, &cross, formula)?;
            emit(&output, &rep, render::table_text)?;
            Ok(if rep.rows.iter().any(|r| r.matches == Some(false)) { EXIT_FAIL } else { 0 })
        }
        Cmd::Verify {
            algebra,
            cross,
            checks,
            oracle_cap,
            output,
        } => {
            let t = parse_algebra(&algebra).map_err(input)?;
            let cross = parse_nodes("cross", &cross, None).map_err(input)?;
            let checks = report::parse_checks(&checks)?;
            let rep = report::verify(t, &cross, &checks, oracle_cap)?;
            emit(&output, &rep, render::verify_text)?;
            Ok(if rep.failed() {
                EXIT_FAIL
            } else if rep.oracle_skipped() {
                EXIT_SKIPPED
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
