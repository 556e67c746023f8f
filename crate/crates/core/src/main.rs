//! `stirlab` — exact and simulated cross-checks for set-partition counts
//! and the identities connecting them.
//!
//! Every subcommand prints one structured document (JSON by default, CSV
//! with `--format csv`) to stdout.  `--out FILE` additionally writes the
//! same document with the timing field stripped, so repeated runs with the
//! same arguments produce byte-identical files regardless of machine load
//! or `--threads`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stirlab::commands::{
    self, error_exit_code, BenchArgs, CommandOutcome, PolyArgs, PolyFamily, SimulateArgs,
    StirlingArgs, StirlingMethod, VerifyArgs,
};
use stirlab::exact::{parse_rational, Rat};
use stirlab::report::OutputFormat;
use stirlab::suite::GridSpec;
use stirlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "stirlab",
    version,
    about = "Exact and simulated cross-checks for set-partition counts and their identities",
    propagate_version = true
)]
struct Cli {
    /// Output format for stdout and --out
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Also write the document (minus timing) to this file; byte-identical
    /// across reruns with the same arguments
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Override every enumeration cap (tuple counts, outcome sequences)
    #[arg(long, global = true, value_name = "N")]
    max_enum: Option<u64>,

    /// Worker threads (0 or omitted: use the default pool)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the partition count S(n, d) by one route or by all of them
    Stirling {
        /// Number of elements being partitioned
        #[arg(long)]
        n: u32,
        /// Number of blocks
        #[arg(long)]
        d: u32,
        /// oracle | recurrence | euler | record | record-dp | duality
        /// (omitted: run all applicable routes and check agreement)
        #[arg(long, value_parser = parse_method)]
        method: Option<StirlingMethod>,
    },

    /// Expand a polynomial family member to exact coefficients
    Poly {
        /// f (tuple sum) | g (alternating difference) | g-stirling
        /// (g rebuilt from partition counts)
        #[arg(long, value_parser = parse_family)]
        which: PolyFamily,
        /// Family parameter (number of blocks / boxes)
        #[arg(long)]
        d: u32,
        /// Family parameter (number of elements / throws)
        #[arg(long)]
        n: u32,
    },

    /// Estimate the box-coverage probability by sampling and compare with
    /// the exact value
    Simulate {
        /// Balls thrown per trial
        #[arg(long)]
        n: u32,
        /// Boxes that must all be covered
        #[arg(long)]
        d: u32,
        /// Model parameter (each box is hit with probability 1/x); a
        /// rational like 4 or 9/2, with x >= d
        #[arg(long, value_parser = parse_rat)]
        x: Rat,
        /// Independent trials
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Random stream seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Cross-check every identity on a parameter grid
    Verify {
        /// Largest n in the grid
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        /// Trials per Monte Carlo cell
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Seed for the Monte Carlo cells
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated identity ids to run (default: all)
        #[arg(long, value_delimiter = ',', value_name = "ID,...")]
        only: Option<Vec<String>>,
        /// Comma-separated x samples to use for every cell (default: a
        /// built-in per-d list)
        #[arg(long, value_delimiter = ',', value_parser = parse_rat, value_name = "X,...")]
        x_samples: Option<Vec<Rat>>,
    },

    /// Time computation routes against each other on an (n, d) grid
    Bench {
        /// Comma-separated n values
        #[arg(long, value_delimiter = ',', default_values_t = [14u32], value_name = "N,...")]
        n: Vec<u32>,
        /// Comma-separated d values (cells with d > n are dropped)
        #[arg(long, value_delimiter = ',', default_values_t = [7u32], value_name = "D,...")]
        d: Vec<u32>,
        /// Comma-separated methods to time
        #[arg(
            long,
            value_delimiter = ',',
            value_parser = parse_method,
            default_values_t = [StirlingMethod::Record, StirlingMethod::RecordDp],
            value_name = "M,..."
        )]
        methods: Vec<StirlingMethod>,
        /// Timed repetitions per cell and method
        #[arg(long, default_value_t = 3)]
        reps: u32,
    },
}

/// CLI spelling of the output format.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<StirlingMethod, String> {
    s.parse()
}

fn parse_family(s: &str) -> std::result::Result<PolyFamily, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            if matches!(err, Error::BoundExceeded { .. }) {
                eprintln!("hint: raise the cap with --max-enum");
            }
            ExitCode::from(error_exit_code(&err) as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let outcome = run_in_pool(cli.threads, || dispatch(&cli))??;
    let format = OutputFormat::from(cli.format);
    print!("{}", outcome.envelope.render(format));
    if let Some(path) = &cli.out {
        let stable = outcome.envelope.without_timing().render(format);
        std::fs::write(path, stable)
            .map_err(|e| Error::internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome.exit_code)
}

fn dispatch(cli: &Cli) -> Result<CommandOutcome> {
    match &cli.command {
        Command::Stirling { n, d, method } => commands::run_stirling(&StirlingArgs {
            n: *n,
            d: *d,
            method: *method,
            max_enum: cli.max_enum,
        }),
        Command::Poly { which, d, n } => commands::run_poly(&PolyArgs {
            which: *which,
            d: *d,
            n: *n,
            max_enum: cli.max_enum,
        }),
        Command::Simulate {
            n,
            d,
            x,
            trials,
            seed,
        } => commands::run_simulate(&SimulateArgs {
            n: *n,
            d: *d,
            x: x.clone(),
            trials: *trials,
            seed: *seed,
        }),
        Command::Verify {
            n_max,
            trials,
            seed,
            only,
            x_samples,
        } => commands::run_verify(&VerifyArgs {
            grid: GridSpec {
                n_max: *n_max,
                x_samples: x_samples.clone(),
                trials: *trials,
                seed: *seed,
                max_enum: cli.max_enum,
            },
            only: only.clone(),
        }),
        Command::Bench {
            n,
            d,
            methods,
            reps,
        } => commands::run_bench(&BenchArgs {
            ns: n.clone(),
            ds: d.clone(),
            methods: methods.clone(),
            reps: *reps,
            max_enum: cli.max_enum,
        }),
    }
}

/// Run `job` on a dedicated pool of `threads` workers, or inline on the
/// default pool when no explicit size was requested.
fn run_in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None | Some(0) => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::internal(format!("cannot build a {t}-thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}
