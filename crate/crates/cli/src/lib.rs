//! The `catend` command line: loads instances and diagrams from JSON
//! documents, runs constructions and prints certification reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read, parsed or built.

mod commands;
pub mod document;
pub mod report;

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Entry, InstanceSummary, Output, Report, Status};

pub const EXIT_INPUT_ERROR: i32 = 2;

/// A document that cannot be read, parsed or built, or a request the
/// instance does not support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Parser)]
#[command(name = "catend", version, about = "Certified limits, colimits and ends on finite instances")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitVia {
    /// The instance's own limit construction.
    Construction,
    /// Search over every cone (enumerable instances only).
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColimitVia {
    /// Γ and refinement to the initial cocone (quantales only).
    Ends,
    /// Search over every cocone.
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BifunctorKind {
    /// `(X, Y) ↦ Y^{F X}` for an endofunctor document `F`.
    ExpOfEndofunctor,
    /// `(X, Y) ↦ Y^{Lim X^d}` for a diagram document `d`.
    ExpLim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Limit of the subdivision diagram.
    Direct,
    /// Through a cogenerator, with the empty family.
    CogeneratorEmpty,
    /// Through a cogenerator, with every object as the family.
    CogeneratorFull,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document of any kind.
    Validate {
        path: PathBuf,
        /// Instance to check a diagram or endofunctor document against.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Check the symmetric monoidal closed identities on an instance.
    Laws {
        instance: PathBuf,
        /// Cases per law on sampled instances.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add the pentagon, hexagon and triangle coherence laws.
        #[arg(long)]
        extended: bool,
    },
    /// Compute and certify the limit of a diagram.
    Limit {
        instance: PathBuf,
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = LimitVia::Construction)]
        via: LimitVia,
    },
    /// Compute and certify the colimit of a diagram.
    Colimit {
        instance: PathBuf,
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = ColimitVia::Ends)]
        via: ColimitVia,
    },
    /// Compute the end of a bifunctor `(X, Y) ↦ Y^{F X}`.
    End {
        instance: PathBuf,
        #[arg(long, value_enum)]
        bifunctor: BifunctorKind,
        /// Endofunctor document for exp-of-endofunctor, diagram document for exp-lim.
        argument: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
    /// Synthesize the colimit of a diagram as an end, with its full transcript.
    ColimitViaEnds {
        instance: PathBuf,
        diagram: PathBuf,
        /// Compare with brute-force search and with the other end route.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
}

/// Runs one command. `echo` is the argument list shown in the report.
pub fn execute(cli: &Cli, echo: Vec<String>) -> Result<Report, InputError> {
    let started = Instant::now();
    let mut report = Report::new(echo);
    commands::run(&cli.command, &mut report)?;
    if cli.timing {
        report.elapsed_us = Some(started.elapsed().as_micros() as u64);
    }
    report.finish();
    Ok(report)
}

/// Parses `args` (without the program name), runs the command and renders the
/// report. Returns the text for stdout, the text for stderr and the exit code.
pub fn main_with(args: Vec<String>) -> (String, String, i32) {
    let cli = match Cli::try_parse_from(std::iter::once("catend".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() { (String::new(), text, code) } else { (text, String::new(), code) };
        }
    };
    match execute(&cli, args) {
        Ok(r) => {
            let text = if cli.json { r.to_json() } else { r.to_string() };
            (text, String::new(), r.exit_code)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INPUT_ERROR),
    }
}
