//! Command-line front end: quiver files in, deterministic JSON, text or SVG
//! out.
//!
//! Exit codes: 0 success, 2 a mathematical identity failed (`check`, `theta
//! --method both`, `oracle`), 3 a resource budget was exceeded, 4 bad input or
//! an unsupported combination such as `joyce` on a quiver with potential.

pub mod commands;
pub mod config;
pub mod quiver_file;
pub mod render;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Cli, RunConfig};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Identity(String),
    #[error("{0}")]
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Identity(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Input(_) => 4,
        }
    }
}

impl From<wallcross::Error> for Failure {
    fn from(e: wallcross::Error) -> Self {
        use wallcross::Error as E;
        let msg = e.to_string();
        match e {
            E::Budget(_) => Failure::Budget(msg),
            E::InvariantViolation(_) | E::Inconsistent(_) | E::DirectionsTooSmall(_) | E::NotInGroup(_) => Failure::Identity(msg),
            _ => Failure::Input(msg),
        }
    }
}

pub const EXIT_IDENTITY: u8 = 2;

/// Parse arguments, run, write the artifact and report the exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("wallcross: identity check failed");
            ExitCode::from(EXIT_IDENTITY)
        }
        Err(f) => {
            eprintln!("wallcross: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = RunConfig::from_cli(cli)?;
    let path = cli.command.quiver_path();
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let (_, quiver) = quiver_file::parse_quiver_file(&bytes).map_err(|d| Failure::Input(format!("{}: {d}", path.display())))?;
    let artifact = commands::run(&cli.command, &quiver, &cfg)?;
    match &cli.out {
        Some(out) => std::fs::write(out, &artifact.text).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?,
        None => print!("{}", artifact.text),
    }
    Ok(artifact.holds)
}
