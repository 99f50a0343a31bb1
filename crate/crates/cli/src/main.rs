//! `hardy`: coefficient tables, envelope reports and the verification suite
//! for Hermite expansions of Gaussian-decaying functions.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 parse
//! error, 3 numerical domain error, 4 envelope divergence.

// `!(x > 0.0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, FlagOverrides, RunConfig};
use error::CliError;
use input::{parse_complex, parse_real, InputSpec};
use output::{emit, json_bytes, Format};

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Hermite coefficient decay for functions with Gaussian envelopes")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Grid half-width L (points at −L + j·2L/N).
    #[arg(long = "grid-L", global = true)]
    grid_l: Option<f64>,
    /// Number of grid points N.
    #[arg(long = "grid-N", global = true)]
    grid_n: Option<usize>,
    /// Highest Hermite index.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// Number of uniform times on [0, π/2).
    #[arg(long = "t-grid", global = true)]
    t_grid: Option<usize>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with RunConfig fields; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hermite coefficients against the two decay bounds.
    Coeffs {
        input: String,
        /// Envelope parameter in (0, 1); defaults to the input's own.
        #[arg(long)]
        a: Option<f64>,
    },
    /// Envelope constants of f and its Fourier transform.
    Envelope {
        input: String,
        #[arg(long)]
        a: Option<f64>,
    },
    /// Bargmann transform at given points, with sector bounds.
    Bargmann {
        input: String,
        /// Comma-separated complex points, e.g. `1+0.5i,2-1i`.
        #[arg(long, default_value = "0,1,1i,1+1i,2-1i")]
        w: String,
        #[arg(long)]
        a: Option<f64>,
    },
    /// Coefficients under the oscillator flow.
    Evolve {
        input: String,
        /// Comma-separated times; defaults to the t-grid.
        #[arg(long)]
        t: Option<String>,
    },
    /// Envelope constants of ψ_t at a = tanh γ over the t-grid.
    Confine {
        input: String,
        #[arg(long)]
        beta: Option<f64>,
        /// Defaults to β.
        #[arg(long)]
        gamma: Option<f64>,
        /// Also rerun on a refined t-grid at γ = β.
        #[arg(long)]
        probe: bool,
    },
    /// Closed-form weighted norms of the Hermite functions.
    Norms {
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        /// Optional input whose norm is reported in the summary.
        input: Option<String>,
    },
    /// Runs every verification criterion.
    VerifyAll,
}

fn split_list<T>(s: &str, parse: impl Fn(&str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse).collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let file = g.config.as_deref().map(FileConfig::load).transpose()?.unwrap_or_default();
    let flags = FlagOverrides {
        half_width: g.grid_l,
        num_points: g.grid_n,
        kmax: g.kmax,
        t_grid_size: g.t_grid,
        format: g.format,
        out: g.out,
    };
    let cfg = RunConfig::resolve(file, flags)?;

    let table = match &cli.command {
        Command::Coeffs { input, a } => commands::coeffs(&InputSpec::parse(input)?, *a, &cfg)?,
        Command::Envelope { input, a } => commands::envelope(&InputSpec::parse(input)?, *a, &cfg)?,
        Command::Bargmann { input, w, a } => {
            let ws = split_list(w, parse_complex)?;
            commands::bargmann(&InputSpec::parse(input)?, &ws, *a, &cfg)?
        }
        Command::Evolve { input, t } => {
            let times = match t {
                Some(t) => split_list(t, parse_real)?,
                None => cfg.t_grid(),
            };
            commands::evolve(&InputSpec::parse(input)?, &times, &cfg)?
        }
        Command::Confine { input, beta, gamma, probe } => {
            commands::confine(&InputSpec::parse(input)?, *beta, *gamma, *probe, &cfg)?
        }
        Command::Norms { a, nmax, input } => {
            let input = input.as_deref().map(InputSpec::parse).transpose()?;
            commands::norms(*a, *nmax, input.as_ref(), &cfg)?
        }
        Command::VerifyAll => {
            let outcome = commands::verify_all(&cfg);
            let bytes = match cfg.output_format {
                Format::Csv => outcome.table().to_csv()?,
                Format::Json => json_bytes(&outcome.json(&cfg))?,
            };
            emit(&bytes, cfg.output_path.as_deref())?;
            for c in outcome.criteria.iter().filter(|c| !c.pass) {
                eprintln!("FAIL [{}] {}: {}", c.id, c.name, c.detail);
            }
            if outcome.failed > 0 {
                return Err(CliError::VerifyFailed { failed: outcome.failed, total: outcome.criteria.len() });
            }
            return Ok(());
        }
    };
    emit(&table.render(cfg.output_format)?, cfg.output_path.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardy: {e}");
            e.exit_code()
        }
    }
}
