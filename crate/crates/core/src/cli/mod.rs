//! Batch command-line surface.
//!
//! Every subcommand collects its artifacts in memory and writes them once at
//! the end of the run, so a failed run leaves at most a `report.json` behind.
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 invariant violation.

mod commands;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::spec::FamilySpec;
use crate::family::Grid;

pub use output::{format_number, Artifacts, Check};

#[derive(Debug, Parser)]
#[command(name = "eigentrack", version, about = "Smooth eigenvalue and eigenvector tracking for one-parameter matrix families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

fn parse_grid(s: &str) -> std::result::Result<GridArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected lo:hi:n, got `{s}`"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| format!("bad lower bound `{}`", parts[0]))?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| format!("bad upper bound `{}`", parts[1]))?;
    let points: usize = parts[2].trim().parse().map_err(|_| format!("bad point count `{}`", parts[2]))?;
    if points < 2 || !(lo < hi) {
        return Err(format!("need lo < hi and at least 2 points, got `{s}`"));
    }
    Ok(GridArg { lo, hi, points })
}

/// Circle `center_re,center_im,radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleArg {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

fn parse_circle(s: &str) -> std::result::Result<CircleArg, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number `{x}` in contour `{s}`")))
        .collect::<std::result::Result<_, _>>()?;
    match v[..] {
        [re, im, radius] => Ok(CircleArg { re, im, radius }),
        _ => Err(format!("expected center_re,center_im,radius, got `{s}`")),
    }
}

/// Flags shared by the family-driven subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Family-spec JSON file.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Parameter grid `lo:hi:n`; offsets from `--anchor` when that is given.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<GridArg>,
    /// Evaluate the grid as offsets around this parameter value.
    #[arg(long, allow_hyphen_values = true)]
    pub anchor: Option<f64>,
    /// Place grid points at `w·sinh(u)` with `u` uniform, clustering within `w` of the anchor.
    #[arg(long, value_name = "W")]
    pub stretch: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance override `key=value` (repeatable).
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    pub tol: Vec<String>,
    /// Bisect ambiguous steps (default).
    #[arg(long, overrides_with = "no_refine")]
    pub refine: bool,
    /// Log ambiguous steps instead of bisecting them.
    #[arg(long = "no-refine")]
    pub no_refine: bool,
}

impl Common {
    fn refine(&self) -> bool {
        !self.no_refine
    }

    fn tolerances(&self) -> Result<Tolerances> {
        Tolerances::default().with_overrides(self.tol.iter().map(String::as_str))
    }

    fn spec(&self) -> Result<FamilySpec> {
        let path = self.family.as_ref().ok_or_else(|| Error::Config("--family is required".into()))?;
        FamilySpec::from_path(path)
    }

    /// The grid from the flags, defaulting to 101 points over `domain`.
    fn grid(&self, domain: (f64, f64)) -> Result<Grid> {
        let g = match self.grid {
            Some(g) => g,
            None => {
                if !(domain.0.is_finite() && domain.1.is_finite()) {
                    return Err(Error::Config("--grid is required for an unbounded domain".into()));
                }
                GridArg { lo: domain.0, hi: domain.1, points: 101 }
            }
        };
        let anchor = self.anchor.unwrap_or(0.0);
        match self.stretch {
            Some(w) => Grid::stretched(anchor, g.lo, g.hi, g.points, w),
            None => Grid::uniform_local(anchor, g.lo, g.hi, g.points),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Track labeled eigenvalue curves (and optionally eigenvector frames).
    Track {
        #[command(flatten)]
        common: Common,
        /// Also track gauge-fixed eigenvector frames.
        #[arg(long)]
        frames: bool,
    },
    /// Riesz projectors, local frames and compressed matrices along a grid.
    Riesz {
        #[command(flatten)]
        common: Common,
        /// Circle contour `center_re,center_im,radius`.
        #[arg(long, value_parser = parse_circle, allow_hyphen_values = true)]
        contour: Option<CircleArg>,
        /// Build a circle around these eigenvalue indices (ascending order at the first grid point).
        #[arg(long, value_delimiter = ',')]
        cluster: Vec<usize>,
    },
    /// Matching distance between two spectra or two normal matrices.
    Match {
        /// First spectrum (rows `re,im`) or matrix (rows of `re,im` pairs).
        a: PathBuf,
        /// Second spectrum or matrix, in the same format.
        b: PathBuf,
        /// Read the files as matrices.
        #[arg(long)]
        matrices: bool,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance override `key=value` (repeatable).
        #[arg(long = "tol", value_name = "KEY=VALUE")]
        tol: Vec<String>,
    },
    /// Root curves of a polynomial family, with optional power substitution.
    Polyroots {
        #[command(flatten)]
        common: Common,
        /// Track roots of P(t0 ± s^N); EPS is `+` or `-`.
        #[arg(long, num_args = 3, value_names = ["T0", "N", "EPS"], allow_hyphen_values = true)]
        substitute: Option<Vec<String>>,
        /// Estimate the substitution order at this parameter.
        #[arg(long, allow_hyphen_values = true)]
        estimate: Option<f64>,
        /// Largest exponent denominator tried by `--estimate`.
        #[arg(long, default_value_t = 12)]
        k_max: usize,
        /// Require all roots to be real.
        #[arg(long)]
        real: bool,
    },
    /// The glued counterexample: eigenvalue formula, Hölder quotients, eigenvector angles.
    Example {
        /// Number of segments.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Hölder exponents for the quotient table.
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
        alpha: Vec<f64>,
        /// Grid points per segment.
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance override `key=value` (repeatable).
        #[arg(long = "tol", value_name = "KEY=VALUE")]
        tol: Vec<String>,
    },
    /// Tracking with crossing, contact-order and Hölder-quotient diagnostics.
    Diagnose {
        #[command(flatten)]
        common: Common,
        /// Hölder exponents for the quotient sweep.
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
        alpha: Vec<f64>,
        /// Relative gap below which two curves are examined as a crossing.
        #[arg(long, default_value_t = 1e-3)]
        gap_tol: f64,
        /// Limit the Hölder sweep to the lowest curves.
        #[arg(long)]
        curves: Option<usize>,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_config() {
        return 2;
    }
    match err {
        Error::NotHermitian { .. }
        | Error::NotNormal { .. }
        | Error::StructureViolation { .. }
        | Error::ProjectorDefect { .. }
        | Error::NotInvariant { .. }
        | Error::BoundViolated { .. } => 4,
        _ => 3,
    }
}

/// Runs a parsed command, writes its artifacts and returns the exit status.
pub fn run(cli: Cli) -> i32 {
    let out = match &cli.command {
        Command::Track { common, .. }
        | Command::Riesz { common, .. }
        | Command::Polyroots { common, .. }
        | Command::Diagnose { common, .. } => common.out.clone(),
        Command::Match { out, .. } | Command::Example { out, .. } => out.clone(),
    };
    let mut artifacts = Artifacts::new(command_name(&cli.command));
    let status = match commands::dispatch(&cli.command, &mut artifacts) {
        Ok(()) if artifacts.checks_pass() => 0,
        Ok(()) => 4,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            artifacts.set_error(&e);
            exit_code(&e)
        }
    };
    artifacts.set_exit_code(status);
    print!("{}", artifacts.stdout());
    if let Some(dir) = out {
        if let Err(e) = artifacts.write(&dir, status == 0 || status == 4) {
            eprintln!("error[{}]: {e}", e.name());
            return if status == 0 { 2 } else { status };
        }
    }
    status
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Track { .. } => "track",
        Command::Riesz { .. } => "riesz",
        Command::Match { .. } => "match",
        Command::Polyroots { .. } => "polyroots",
        Command::Example { .. } => "example",
        Command::Diagnose { .. } => "diagnose",
    }
}

/// Parses `args` (program name first) and runs; usage errors exit with 2.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_and_contour_flags() {
        assert_eq!(parse_grid("-1:1:41").unwrap(), GridArg { lo: -1.0, hi: 1.0, points: 41 });
        assert!(parse_grid("1:-1:41").is_err());
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert_eq!(parse_circle("0.5,-1,2").unwrap(), CircleArg { re: 0.5, im: -1.0, radius: 2.0 });
        assert!(parse_circle("0,1").is_err());
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from([
            "eigentrack", "track", "--family", "f.json", "--grid", "-1:1:5", "--tol", "refine_depth=3", "--no-refine",
        ])
        .unwrap();
        match cli.command {
            Command::Track { common, frames } => {
                assert!(!frames);
                assert!(!common.refine());
                assert_eq!(common.tolerances().unwrap().refine_depth, 3);
            }
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from(["eigentrack", "polyroots", "--family", "p.json", "--substitute", "0", "2", "-"])
            .unwrap();
        match cli.command {
            Command::Polyroots { substitute, .. } => assert_eq!(substitute.unwrap(), ["0", "2", "-"]),
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from(["eigentrack", "example", "--alpha", "1.0"]).unwrap();
        match cli.command {
            Command::Example { alpha, n_max, .. } => assert_eq!((alpha, n_max), (vec![1.0], 8)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidGrid("x".into())), 2);
        assert_eq!(exit_code(&Error::QuadratureStall { nodes: 1, last_change: 1.0 }), 3);
        assert_eq!(exit_code(&Error::ProjectorDefect { defect: 1.0 }), 4);
        assert_eq!(main_from_args(["eigentrack", "track"]), 2);
        assert_eq!(main_from_args(["eigentrack", "bogus"]), 2);
    }
}
