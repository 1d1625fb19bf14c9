//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wallcross::quiver::{DimVector, Weight};
use wallcross::{Rat, DEFAULT_ORDER};

use crate::Failure;

#[derive(Parser, Debug)]
#[command(name = "wallcross", version, about = "Exact scattering diagrams for quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation order k: all series are computed modulo degree > k.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: u32,

    /// Primes for finite-field enumeration, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [2u64, 3])]
    pub prime: Vec<u64>,

    /// Output format; `render` defaults to svg, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the artifact to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest number of matrix tuples the enumeration oracle may visit.
    #[arg(long, global = true, default_value_t = wallcross::oracle::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Method {
    Path,
    Counts,
    Both,
}

#[derive(Args, Debug)]
pub struct QuiverArg {
    /// Quiver file (JSON).
    pub quiver: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complete the cluster initial walls to a consistent diagram (rank 2).
    Complete(QuiverArg),
    /// Build the stability scattering diagram from finite-field counts.
    Stability(QuiverArg),
    /// Theta function at a generic weight.
    Theta {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Exponent m in the positive cone, e.g. "1,0".
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Weight θ, comma-separated rationals, e.g. "1,-1/2".
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Start of the path in the positive chamber (path method only).
        #[arg(long, allow_hyphen_values = true)]
        basepoint: Option<String>,
    },
    /// Joyce invariants J(d, θ) and their q-deformations on θ^⊥.
    Joyce {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Euler numbers of framed moduli spaces.
    Framed {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// A single dimension vector; all d with δ(d) ≤ k if omitted.
        #[arg(long)]
        dim: Option<String>,
    },
    /// Wall directions carrying semistable representations.
    Walls(QuiverArg),
    /// Compare the cluster completion with the stability diagram.
    Check(QuiverArg),
    /// Brute-force stack counts over prime fields, compared with the recursion.
    Oracle {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        dim: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// List dimension vectors with δ ≤ k carrying self-stable objects.
        #[arg(long)]
        self_stable: bool,
    },
    /// Draw a rank-2 cluster completion as SVG.
    Render(QuiverArg),
}

impl Command {
    pub fn quiver_path(&self) -> &PathBuf {
        match self {
            Command::Complete(q) | Command::Stability(q) | Command::Walls(q) | Command::Check(q) | Command::Render(q) => &q.quiver,
            Command::Theta { quiver, .. } | Command::Joyce { quiver, .. } | Command::Framed { quiver, .. } | Command::Oracle { quiver, .. } => {
                &quiver.quiver
            }
        }
    }
}

/// Validated settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub order: u32,
    pub primes: Vec<u64>,
    pub format: Format,
    pub budget: u64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        if cli.order == 0 {
            return Err(Failure::Input("--order must be at least 1".into()));
        }
        if cli.budget == 0 {
            return Err(Failure::Input("--budget must be positive".into()));
        }
        if cli.prime.is_empty() {
            return Err(Failure::Input("--prime needs at least one prime".into()));
        }
        if let Some(p) = cli.prime.iter().find(|&&p| !is_prime(p)) {
            return Err(Failure::Input(format!("--prime {p} is not prime")));
        }
        let default = if matches!(cli.command, Command::Render(_)) { Format::Svg } else { Format::Json };
        let format = cli.format.unwrap_or(default);
        match (&cli.command, format) {
            (Command::Render(_), Format::Svg) => {}
            (Command::Render(_), _) => return Err(Failure::Input("render only produces svg".into())),
            (_, Format::Svg) => return Err(Failure::Input("svg output is only available for render".into())),
            _ => {}
        }
        Ok(RunConfig { order: cli.order, primes: cli.prime.clone(), format, budget: cli.budget })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn parse_weight(text: &str, rank: usize, flag: &str) -> Result<Weight, Failure> {
    let coords = text
        .split(',')
        .map(|c| Rat::from_str(c.trim()).map_err(|_| Failure::Input(format!("{flag}: {c:?} is not an exact rational"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rank {
        return Err(Failure::Input(format!("{flag} has {} coordinates, the quiver has {rank} vertices", coords.len())));
    }
    Ok(Weight::new(coords))
}

pub fn parse_ints(text: &str, rank: usize, flag: &str) -> Result<Vec<i64>, Failure> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Failure::Input(format!("{flag}: {c:?} is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rank {
        return Err(Failure::Input(format!("{flag} has {} coordinates, the quiver has {rank} vertices", coords.len())));
    }
    Ok(coords)
}

pub fn parse_dim(text: &str, rank: usize) -> Result<DimVector, Failure> {
    let c = parse_ints(text, rank, "--dim")?;
    if c.iter().any(|&x| x < 0) {
        return Err(Failure::Input("--dim must be non-negative".into()));
    }
    Ok(DimVector::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
    }

    #[test]
    fn weights() {
        let w = parse_weight("1, -1/2", 2, "--theta").unwrap();
        assert_eq!(w.to_string(), "(1,-1/2)");
        assert!(parse_weight("1,0.5", 2, "--theta").is_err());
        assert!(parse_weight("1", 2, "--theta").is_err());
        assert!(parse_dim("1,-1", 2).is_err());
    }
}
