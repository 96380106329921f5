//! Thin command-line wrapper around the `jacobi_capacity` library.
//!
//! Exit codes: 0 on success, 1 when the validation suite fails or on I/O
//! errors, 2 on usage errors (bad flags, invalid configurations, unknown
//! figure ids).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jacobi_capacity::cli::{
    self, open_output, FigureId, RunOptions, SnrSpec, Units,
};
use jacobi_capacity::capacity::SnrGrid;
use jacobi_capacity::error::Error;
use jacobi_capacity::model::ChannelConfig;

#[derive(Parser)]
#[command(
    name = "jacobi-capacity",
    version,
    about = "Ergodic capacity of MIMO Jacobi-fading channels: bounds, quadrature, Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Total available modes/cores m.
    #[arg(long)]
    m: usize,
    /// Excited transmit channels m_t.
    #[arg(long)]
    mt: usize,
    /// Excited receive channels m_r.
    #[arg(long)]
    mr: usize,
}

impl ConfigArgs {
    fn build(&self) -> Result<ChannelConfig, Error> {
        ChannelConfig::new(self.m, self.mt, self.mr)
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Monte Carlo trials.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Base RNG seed; trial t uses substream t.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Gauss-Legendre order per quadrature panel (default: auto).
    #[arg(long)]
    quad_order: Option<usize>,
    /// Output units: nats or bits.
    #[arg(long, default_value = "nats")]
    units: Units,
    /// Output path (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
}

impl CommonArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            trials: self.trials,
            seed: self.seed,
            quad_order: self.quad_order,
            units: self.units,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// All capacity quantities at a single SNR.
    Point {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// SNR in dB.
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Capacity sweep over an SNR grid.
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// SNR grid in dB as start:stop:step.
        #[arg(long, allow_hyphen_values = true)]
        snr_db: SnrSpec,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate the marginal eigenvalue density of the canonical reduction.
    Density {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Number of equispaced grid points on [0, 1].
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// Output path (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reproduce the data behind one figure (1a 1b 2a 2b 3a 3b).
    Figure {
        /// Figure id.
        id: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full validation suite and report each check.
    Validate {
        /// Base RNG seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Point {
            cfg,
            snr_db,
            common,
        } => {
            let cfg = cfg.build()?;
            let mut out = open_output(common.output.as_deref())?;
            cli::run_point(&cfg, snr_db, &common.options(), &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            cfg,
            snr_db,
            common,
        } => {
            let cfg = cfg.build()?;
            let grid = match snr_db {
                SnrSpec::Grid(g) => g,
                SnrSpec::Single(db) => SnrGrid::new(db, db, 1.0)?,
            };
            let mut out = open_output(common.output.as_deref())?;
            cli::run_sweep(&cfg, &grid, &common.options(), &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { cfg, grid, output } => {
            let cfg = cfg.build()?;
            let mut out = open_output(output.as_deref())?;
            cli::run_density(&cfg, grid, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure { id, common } => {
            let id: FigureId = match id.parse() {
                Ok(id) => id,
                Err(msg) => {
                    eprintln!("{msg}");
                    return Ok(ExitCode::from(2));
                }
            };
            let mut out = open_output(common.output.as_deref())?;
            cli::run_figure(id, &common.options(), &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { seed } => {
            let mut out = std::io::stdout();
            let passed = cli::run_validate(seed, &mut out)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // Bad user input is a usage error.
                Error::InvalidConfig(_)
                | Error::InvalidArgument(_)
                | Error::NotCanonical(_)
                | Error::QuadratureOrder { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
