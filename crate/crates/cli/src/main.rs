//! `orqi` command line: finite relation tools, planar geometry transforms
//! and Gaussian measure experiments, reporting JSON (or CSV for tables).
//!
//! Exit codes: 0 when the run succeeds and every checked property holds,
//! 2 when a property fails (the report carries the witness), 1 on usage,
//! I/O or schema errors.

mod finite;
mod geom;
mod load;
mod measure;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("bad input: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] orqi::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Core errors that mean the input breaks a mathematical law.
    fn is_violation(&self) -> bool {
        matches!(
            self,
            CliError::Core(
                orqi::Error::NotOrqi(_)
                    | orqi::Error::NotComplemented(_)
                    | orqi::Error::NotClique(..)
                    | orqi::Error::NotConvex(_)
            )
        )
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "orqi",
    version,
    about = "Order reversing quasi involutions toolkit"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Input file (repeatable); positional files are appended
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: usize,
    /// Grid points per axis for membership sampling and agreement checks
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Half-width of the sampling box
    #[arg(long, global = true, default_value_t = 3.0)]
    extent: f64,
    /// Directions on the circle for reciprocal sets and the built-in ball
    #[arg(long, global = true, default_value_t = 720)]
    directions: usize,
    /// Also run the lattice law over every family of subsets (at most 4 points)
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Leave the timestamp out so reruns are byte-identical
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Comma separated labels of a subset
    #[arg(long, global = true, allow_hyphen_values = true)]
    set: Option<String>,
    /// Built-in body name, or a body JSON file for `measure bs`
    #[arg(long, global = true)]
    body: Option<String>,
    /// Radius for width sets
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Mixing parameter in [0, 1] for reciprocal-type sets
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Check a known invariant set instead of transforming an input
    #[arg(long, global = true)]
    invariant_check: bool,
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    /// Number of section heights per axis for `measure prekopa`
    #[arg(long, global = true, default_value_t = 10)]
    heights: usize,
}

impl Opts {
    fn inputs(&self, files: &[PathBuf]) -> Vec<PathBuf> {
        self.input.iter().chain(files).cloned().collect()
    }
}

#[derive(Args, Debug, Default)]
pub struct Files {
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relations and transforms on finite ground sets
    #[command(subcommand)]
    Finite(FiniteCmd),
    /// Transforms of planar point sets and bodies
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Gaussian measure experiments
    #[command(subcommand)]
    Measure(MeasureCmd),
}

#[derive(Subcommand, Debug)]
pub enum FiniteCmd {
    /// Dual of --set, or the whole transform table
    Dual(Files),
    /// Symmetry of a relation, or the ORQI laws of a table
    Verify(Files),
    /// All images of the dual transform
    Image(Files),
    /// Invariant sets, or a maximal almost-invariant set grown from --set
    Invariants(Files),
    /// Extend a transform on a sub-family to the whole power set
    Extend(Files),
    /// Complement of a relation
    Dualize(Files),
    /// Entrywise AND of relations
    Intersect(Files),
    /// Restrict a relation to --set
    Restrict(Files),
}

#[derive(Subcommand, Debug)]
pub enum GeomCmd {
    Polar(Files),
    Dualpolar(Files),
    Flower(Files),
    Reciprocal(Files),
    Balls(Files),
    Widthsets(Files),
    /// J-map polarity check on five seeded random bodies
    Jcheck(Files),
    Unconditional(Files),
    /// Reciprocal gauge from `{"values": [...]}` on equally spaced directions
    Star(Files),
}

#[derive(Subcommand, Debug)]
pub enum MeasureCmd {
    Gamma(Files),
    /// Product of Gaussian measures of a body and its dual
    Bs(Files),
    /// Section condition on a body and its polar
    Prekopa(Files),
}

macro_rules! files_of {
    ($t:ty { $($v:ident),* }) => {
        impl $t {
            fn files(&self) -> &[PathBuf] {
                match self { $(Self::$v(f) => &f.files,)* }
            }
        }
    };
}

files_of!(FiniteCmd {
    Dual,
    Verify,
    Image,
    Invariants,
    Extend,
    Dualize,
    Intersect,
    Restrict
});
files_of!(GeomCmd {
    Polar,
    Dualpolar,
    Flower,
    Reciprocal,
    Balls,
    Widthsets,
    Jcheck,
    Unconditional,
    Star
});
files_of!(MeasureCmd { Gamma, Bs, Prekopa });

fn command_name(cmd: &Command) -> String {
    let (group, sub) = match cmd {
        Command::Finite(c) => ("finite", format!("{c:?}")),
        Command::Geom(c) => ("geom", format!("{c:?}")),
        Command::Measure(c) => ("measure", format!("{c:?}")),
    };
    let sub = sub.split('(').next().unwrap_or_default().to_lowercase();
    format!("{group} {sub}")
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    match &cli.cmd {
        Command::Finite(c) => finite::run(c, &cli.opts),
        Command::Geom(c) => geom::run(c, &cli.opts),
        Command::Measure(c) => measure::run(c, &cli.opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    let o = &cli.opts;
    let result = run(&cli).or_else(|e| {
        if e.is_violation() {
            let mut r = report::Report::new();
            r.set("error", e.to_string());
            Ok(r.violated(true))
        } else {
            Err(e)
        }
    });
    let outcome = result.and_then(|r| {
        let text = r.render(&name, o.format == Format::Csv, !o.no_timestamp)?;
        report::emit(&text, o.output.as_deref())?;
        Ok(r.violated)
    });
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("orqi: {e}");
            ExitCode::from(1)
        }
    }
}
