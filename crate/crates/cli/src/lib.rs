//! Command-line front end: subcommands over the `arcat` core, verification suites and reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use arcat::Error;
use clap::Parser;

use commands::Command;
use config::Config;
use report::Report;

#[derive(Clone, Debug, Parser)]
#[command(
    name = "arcat",
    version,
    about = "Almost split triangles, translates and determiners for quiver representations over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Invariant(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Runs a parsed command: the rendered report (or error message) and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    match cli.command.run(&cli.config) {
        Ok(o) => {
            let r = Report {
                command: cli.command.name().into(),
                config: cli.config.clone(),
                input: o.input,
                universe: o.universe,
                pass: o.pass,
                result: o.result,
                notes: o.notes,
            };
            (r.render(), if r.pass { EXIT_PASS } else { EXIT_FAILURE })
        }
        Err(e) => (format!("error: {e}"), exit_code(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), EXIT_FAILURE);
        assert_eq!(
            exit_code(&Error::CapExceeded { size: 10, cap: 1 }),
            EXIT_CAP
        );
        assert_eq!(exit_code(&Error::Precondition("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::NotPrime(4)), EXIT_USAGE);
    }

    #[test]
    fn run_maps_outcomes_to_exit_codes() {
        let cli = Cli::parse_from(["arcat", "verify", "euler-form", "--samples", "3"]);
        let (_, code) = run(&cli);
        assert_eq!(code, EXIT_PASS);
        let cli = Cli::parse_from(["arcat", "--cap", "1", "verify", "radical-oracle"]);
        let (msg, code) = run(&cli);
        assert_eq!(code, EXIT_CAP, "{msg}");
    }
}
