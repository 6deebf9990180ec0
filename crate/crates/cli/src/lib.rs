//! Command-line front end for the `aristotle-core` engine.
//!
//! [`run`] executes one parsed invocation and returns the text to emit along
//! with the exit code; `main` only handles argument parsing and I/O.

pub mod classify;
pub mod config;
pub mod derive_law;
pub mod errata;
pub mod error;
pub mod input;
pub mod output;
pub mod sampling;
pub mod simulate;
pub mod verify;

use std::io::Read;

use aristotle_core::{DualElement, Rational, Scalar};

pub use config::{Backend, Cli, Command, Format, RunConfig};
pub use error::CliError;

/// Result of a completed run. `code` is 0, or 2 when a verification failed;
/// the output is still emitted in that case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: 0, diagnostic: None }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.backend {
        Backend::Rational => run_with::<Rational>(config),
        Backend::Float => run_with::<f64>(config),
    }
}

fn run_with<S: Scalar>(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        Command::Classify => Ok(Outcome::ok(classify::run(config, &load_points::<S>(config)?, true)?)),
        Command::Invariants => Ok(Outcome::ok(classify::run(config, &load_points::<S>(config)?, false)?)),
        Command::Simulate => Ok(Outcome::ok(simulate::run(config, &load_points::<S>(config)?)?)),
        Command::Verify => {
            let (output, report) = verify::run::<S>(config);
            let failed = report.failed_names();
            Ok(if failed.is_empty() {
                Outcome::ok(output)
            } else {
                Outcome {
                    output,
                    code: 2,
                    diagnostic: Some(format!("verification failed: {}", failed.join(", "))),
                }
            })
        }
        Command::Errata => {
            exact_only(config)?;
            Ok(Outcome::ok(errata::run(config)))
        }
        Command::DeriveLaw => {
            exact_only(config)?;
            let (output, mismatches) = derive_law::run(config);
            Ok(Outcome {
                output,
                code: if mismatches == 0 { 0 } else { 2 },
                diagnostic: (mismatches > 0)
                    .then(|| format!("reconstruction disagrees with the group law on {mismatches} points")),
            })
        }
    }
}

fn exact_only(config: &RunConfig) -> Result<(), CliError> {
    match config.backend {
        Backend::Rational => Ok(()),
        Backend::Float => Err(CliError::Usage(format!(
            "{} compares formulas exactly and only runs on the rational backend",
            config.command.name()
        ))),
    }
}

fn load_points<S: Scalar>(config: &RunConfig) -> Result<Vec<DualElement<S>>, CliError> {
    match &config.points {
        config::PointSource::None => Err(CliError::Usage(format!(
            "{} needs dual points: pass --point p,e,f,k,y or --input PATH",
            config.command.name()
        ))),
        config::PointSource::Inline(items) => {
            let mut out = Vec::new();
            for item in items {
                out.extend(input::parse_points(item, "--point")?);
            }
            Ok(out)
        }
        config::PointSource::File(path) => {
            let (text, name) = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                (s, "<stdin>".to_string())
            } else {
                let s = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read {}: {e}", path.display()))
                })?;
                (s, path.display().to_string())
            };
            input::parse_points(&text, &name)
        }
    }
}
