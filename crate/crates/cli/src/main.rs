//! `effnum` — effective counting reports from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use effnum_cli::anderson::ScanParams;
use effnum_cli::commands::{
    cmd_anderson, cmd_grid, cmd_sample, cmd_state, cmd_verify, CommandOutput, OutputFormat,
};
use effnum_cli::CliError;

/// Effective counting measures for states, grids, and model scans.
#[derive(Parser)]
#[command(name = "effnum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Where to write the report (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format; `anderson` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// All counting quantifiers of a state's outcome weights.
    State {
        /// State file (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Probing basis: `identity` or the path of an observable file
        /// whose eigenbasis to use.
        #[arg(long, default_value = "identity")]
        basis: String,
        /// Renyi orders to evaluate (repeatable; default 0.5, 2, 3).
        #[arg(long = "alpha")]
        alpha: Vec<f64>,
    },
    /// Effective volume of a grid wavefunction.
    Grid {
        /// Grid file (JSON header, samples inline or in a sidecar CSV).
        #[arg(long)]
        input: PathBuf,
        /// Renyi orders to evaluate (repeatable; default 0.5, 2, 3).
        #[arg(long = "alpha")]
        alpha: Vec<f64>,
    },
    /// Seeded axiom battery for one quantifier, judged against its
    /// expected pass/fail pattern.
    Verify {
        /// Quantifier name: n_star, support_count, participation_number,
        /// exp_shannon, or exp_renyi.
        quantifier: String,
        /// Battery seed.
        #[arg(long, env = "EFFNUM_SEED", default_value_t = 0)]
        seed: u64,
        /// Trials per axiom check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Renyi order for exp_renyi (first value wins; default 2).
        #[arg(long = "alpha")]
        alpha: Vec<f64>,
        /// Exit nonzero unless every check passed, including ones this
        /// quantifier is expected to fail.
        #[arg(long)]
        require_all_pass: bool,
    },
    /// Simulated measurements of a state, empirical vs. exact uncertainty.
    Sample {
        /// State file (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Observable file; measurements then probe its eigenbasis instead
        /// of the identity.
        #[arg(long)]
        observable: Option<PathBuf>,
        /// Number of simulated measurements.
        #[arg(long)]
        count: usize,
        /// Sampling seed.
        #[arg(long, env = "EFFNUM_SEED", default_value_t = 0)]
        seed: u64,
        /// Renyi orders to evaluate (repeatable; default 0.5, 2, 3).
        #[arg(long = "alpha")]
        alpha: Vec<f64>,
    },
    /// Occupation measures across a disordered tight-binding chain.
    Anderson {
        /// Number of chain sites.
        #[arg(long)]
        sites: usize,
        /// Disorder strength; site energies are uniform on [-W/2, W/2].
        #[arg(long)]
        disorder: f64,
        /// Nearest-neighbor hopping amplitude.
        #[arg(long, default_value_t = 1.0)]
        hopping: f64,
        /// Scan seed; realization r draws from stream r.
        #[arg(long, env = "EFFNUM_SEED", default_value_t = 0)]
        seed: u64,
        /// Number of disorder realizations.
        #[arg(long, default_value_t = 1)]
        realizations: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let output = cli.output;
    match dispatch(cli.command, format) {
        Ok(out) => match write_output(output.as_deref(), &out.bytes) {
            Ok(()) => ExitCode::from(out.exit_code as u8),
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn dispatch(command: Command, format: Option<Format>) -> Result<CommandOutput, CliError> {
    let pick = |default: OutputFormat| match format {
        Some(Format::Json) => OutputFormat::Json,
        Some(Format::Csv) => OutputFormat::Csv,
        None => default,
    };
    match command {
        Command::State {
            input,
            basis,
            alpha,
        } => cmd_state(&input, &basis, &alpha, pick(OutputFormat::Json)),
        Command::Grid { input, alpha } => cmd_grid(&input, &alpha, pick(OutputFormat::Json)),
        Command::Verify {
            quantifier,
            seed,
            trials,
            alpha,
            require_all_pass,
        } => cmd_verify(
            &quantifier,
            seed,
            trials,
            &alpha,
            require_all_pass,
            pick(OutputFormat::Json),
        ),
        Command::Sample {
            input,
            observable,
            count,
            seed,
            alpha,
        } => cmd_sample(
            &input,
            observable.as_deref(),
            count,
            seed,
            &alpha,
            pick(OutputFormat::Json),
        ),
        Command::Anderson {
            sites,
            disorder,
            hopping,
            seed,
            realizations,
        } => cmd_anderson(
            &ScanParams {
                n_sites: sites,
                disorder,
                hopping,
                seed,
                realizations,
            },
            pick(OutputFormat::Csv),
        ),
    }
}

fn write_output(path: Option<&std::path::Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::numeric(format!("writing stdout: {e}"))),
    }
}
