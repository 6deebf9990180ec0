use std::io::Write;
use std::process::ExitCode;

use aristotle_orbits::{run, Cli, RunConfig};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { 1 });
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let outcome = run(&config)?;
        match &config.out {
            Some(path) => std::fs::write(path, &outcome.output)?,
            None => std::io::stdout().lock().write_all(outcome.output.as_bytes())?,
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if let Some(d) = outcome.diagnostic {
                eprintln!("aristotle-orbits: {d}");
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("aristotle-orbits: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
