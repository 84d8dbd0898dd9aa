//! `robin-corner`: classify, build, evaluate and export corner eigensolutions.

mod args;
mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use args::{AngleArgs, ConfigArgs, GridArgs, SeriesFile};

/// Directory override for `export`.
pub const OUT_DIR_VAR: &str = "ROBIN_CORNER_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "robin-corner", version, about = "Singular eigensolutions of the Laplacian in Dirichlet-Robin corners")]
struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long, short, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical-pair verdict for one configuration.
    Classify {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long)]
        json: bool,
    },
    /// Build the series and write it as JSON.
    Build {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long, default_value_t = robin_corner::series::DEFAULT_MAX_TERMS)]
        max_terms: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Value and gradient on an (r, theta) grid.
    Eval {
        #[command(flatten)]
        series: SeriesFile,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Absolute and relative Robin error against r.
    Error {
        #[command(flatten)]
        series: SeriesFile,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Energy over eps < r < R.
    Energy {
        #[command(flatten)]
        series: SeriesFile,
        #[arg(long, default_value_t = 1.0)]
        r_max: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Roots of gamma sin(lambda omega) + lambda cos(lambda omega) = 0.
    Eig {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "1")]
        gamma: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        j_max: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Tip regime of a bridged antiplane crack (omega = pi).
    Crack {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        irrational: bool,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Also write sigma_yz(x, 0) as CSV.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 81)]
        n_x: usize,
    },
    /// Field, error and energy tables of a series as CSV files.
    Export {
        #[command(flatten)]
        series: SeriesFile,
        #[command(flatten)]
        grid: GridArgs,
        /// Defaults to $ROBIN_CORNER_OUT_DIR, then the working directory.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    BadFile { path: PathBuf, source: robin_corner::Error },
    #[error(transparent)]
    Domain(#[from] robin_corner::Error),
}

impl CliError {
    pub fn config(e: robin_corner::Error) -> CliError {
        CliError::Usage(e.to_string())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::BadFile { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    use commands::*;
    match cli.command {
        Command::Classify { config, j, json } => classify(&config, j, json),
        Command::Build { config, j, max_terms, output } => build(&config, j, max_terms, output.out.as_deref()),
        Command::Eval { series, grid, output } => eval(&series.load()?, &grid, output.out.as_deref()),
        Command::Error { series, grid, output } => error(&series.load()?, &grid, output.out.as_deref()),
        Command::Energy { series, r_max, eps, output } => energy(&series.load()?, r_max, eps, output.out.as_deref()),
        Command::Eig { angle, gamma, j_max, jobs, output } => eig(&angle, &gamma, j_max, jobs, output.out.as_deref()),
        Command::Crack { alpha, irrational, gamma, trace, x_min, x_max, n_x } => {
            crack(&alpha, irrational, gamma, trace.as_deref(), (x_min, x_max, n_x))
        }
        Command::Export { series, grid, out_dir, jobs } => {
            let dir = out_dir
                .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            export(&series, &grid, &dir, jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("robin-corner: {e}");
            ExitCode::from(e.code())
        }
    }
}
