//! Command-line grammar and the validated run configuration.

use std::path::PathBuf;

use aristotle_core::{Picture, Scalar};
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::sampling::DEFAULT_SEED;

/// The only tensor mutation understood by `--mutate`: `[F, E] = F` instead of `Y`.
pub const MUTATION_ID: &str = "Eq2.4";

#[derive(Debug, Parser)]
#[command(
    name = "aristotle-orbits",
    version,
    about = "Coadjoint orbits and dynamics of the doubly extended (1+1) Aristotle group",
    after_help = "Exit codes: 0 success, 1 usage or parse error, 2 verification failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Orbit class, dimension and invariants of each dual point
    Classify,
    /// Invariants of each dual point
    Invariants,
    /// Sample a trajectory in the time or space picture
    Simulate,
    /// Run the seeded verification suite
    Verify,
    /// Compare the printed formulas with the derived ones
    Errata,
    /// Rebuild the group law as exact polynomials
    DeriveLaw,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Invariants => "invariants",
            Command::Simulate => "simulate",
            Command::Verify => "verify",
            Command::Errata => "errata",
            Command::DeriveLaw => "derive-law",
        }
    }

    fn formats(self) -> &'static [Format] {
        match self {
            Command::Classify | Command::Invariants => &[Format::Json, Format::Csv, Format::Text],
            Command::Simulate => &[Format::Json, Format::Csv],
            Command::Verify | Command::Errata | Command::DeriveLaw => &[Format::Json, Format::Text],
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Simulate => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PictureArg {
    Time,
    Space,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Numeric backend
    #[arg(long, global = true, value_enum, default_value = "rational")]
    pub backend: Backend,
    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output format (default: csv for simulate, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Integrator step
    #[arg(long, global = true, value_name = "H", default_value = "0.001")]
    pub step: String,
    /// Parameter range A:B
    #[arg(long, global = true, value_name = "A:B", default_value = "0:1")]
    pub range: String,
    /// Zero tolerance: classification on floats (default 1e-12), comparisons in verify (default 1e-9)
    #[arg(long, global = true, value_name = "EPS")]
    pub tol: Option<f64>,
    /// Simulate the flow on the dual space (p, e, f); defined for every orbit
    #[arg(long, global = true)]
    pub dual: bool,
    /// Sample the exact solution instead of integrating
    #[arg(long, global = true)]
    pub closed_form: bool,
    /// Replace the bracket table with a mutated one (only `Eq2.4`)
    #[arg(long, global = true, value_name = "ID")]
    pub mutate: Option<String>,
    /// Dual point `p,e,f,k,y` or a JSON array; repeatable
    #[arg(long, global = true, value_name = "POINT")]
    pub point: Vec<String>,
    /// File of dual points (JSON or CSV); `-` reads standard input
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Evolution picture for simulate
    #[arg(long, global = true, value_enum, default_value = "time")]
    pub picture: PictureArg,
    /// Number of samples for closed-form and dual trajectories
    #[arg(long, global = true, default_value_t = 11)]
    pub samples: usize,
    /// Random cases per check (verify) or fresh verification points (derive-law)
    #[arg(long, global = true, default_value_t = 1000)]
    pub count: usize,
}

/// Where dual points come from.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSource {
    None,
    Inline(Vec<String>),
    File(PathBuf),
}

/// Fully validated configuration; numeric fields stay textual until the
/// backend is known.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub backend: Backend,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub step: String,
    pub range: (String, String),
    pub tol: Option<f64>,
    pub dual: bool,
    pub closed_form: bool,
    pub mutate: bool,
    pub points: PointSource,
    pub picture: Picture,
    pub samples: usize,
    pub count: usize,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let o = cli.options;
        let command = cli.command;
        let format = o.format.unwrap_or(command.default_format());
        if !command.formats().contains(&format) {
            return Err(CliError::Usage(format!(
                "{} does not support --format {}",
                command.name(),
                format.to_possible_value().expect("no skipped variants").get_name()
            )));
        }
        let mutate = match o.mutate.as_deref() {
            None => false,
            Some(MUTATION_ID) => true,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "unknown mutation {other:?}; the only mutation is {MUTATION_ID}"
                )))
            }
        };
        let range = match o.range.split_once(':') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                (a.trim().to_string(), b.trim().to_string())
            }
            _ => return Err(CliError::Usage(format!("--range expects A:B, got {:?}", o.range))),
        };
        if let Some(t) = o.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Usage("--tol must be a finite non-negative number".into()));
            }
        }
        let points = match (o.input, o.point.is_empty()) {
            (Some(_), false) => {
                return Err(CliError::Usage("use either --input or --point, not both".into()))
            }
            (Some(path), true) => PointSource::File(path),
            (None, false) => PointSource::Inline(o.point),
            (None, true) => PointSource::None,
        };
        if o.samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        if o.count == 0 {
            return Err(CliError::Usage("--count must be at least 1".into()));
        }
        Ok(RunConfig {
            command,
            backend: o.backend,
            seed: o.seed,
            format,
            out: o.out,
            step: o.step,
            range,
            tol: o.tol,
            dual: o.dual,
            closed_form: o.closed_form,
            mutate,
            points,
            picture: match o.picture {
                PictureArg::Time => Picture::Time,
                PictureArg::Space => Picture::Space,
            },
            samples: o.samples,
            count: o.count,
        })
    }

    pub fn parse_scalar_flag<S: Scalar>(flag: &str, text: &str) -> Result<S, CliError> {
        S::parse_scalar(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
    }

    pub fn range_as<S: Scalar>(&self) -> Result<(S, S), CliError> {
        let a = Self::parse_scalar_flag("range", &self.range.0)?;
        let b = Self::parse_scalar_flag("range", &self.range.1)?;
        if b < a {
            return Err(CliError::Usage("--range A:B needs A <= B".into()));
        }
        Ok((a, b))
    }
}
