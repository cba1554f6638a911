//! `sim` — drive the simulation toolkit from the command line.
//!
//! Exit codes: 0 on success, 1 on any run/config error (with a one-line
//! JSON error record on stderr), 2 on command-line usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use sim_cli::config::{self, Entry, Source};
use sim_cli::recipes;
use sim_cli::runner::{self, error_record};

#[derive(Parser)]
#[command(
    name = "sim",
    version,
    about = "Driven spin-orbit-coupled chain simulator: time evolution, \
             Floquet spectra, series coefficients, effective models, and \
             canonical experiment presets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the dynamics and write a trajectory table
    Evolve(RunArgs),
    /// Sweep a parameter ratio and write the quasienergy spectrum table
    Spectrum(RunArgs),
    /// Tabulate the six series coefficients over a drive-ratio grid
    Chi(RunArgs),
    /// Run the exact dynamics and its effective-model prediction side by side
    Effective(RunArgs),
    /// Map the time-averaged impurity-region populations across drive frequencies
    Validity(RunArgs),
    /// Run a named preset (figure1a ... figure7b)
    Figure {
        /// Preset name, e.g. figure4a
        name: String,
        #[command(flatten)]
        args: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Config file of `key = value` lines; `#` starts a comment
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output directory for the CSV artifacts
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Trailing `--key value` pairs overriding config values
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "OVERRIDES")]
    overrides: Vec<String>,
}

fn main() -> ExitCode {
    if let Err(message) = install_thread_pool() {
        eprintln!("{}", error_record("usage", &message));
        return ExitCode::from(1);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", error_record("usage", &e.to_string()));
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((category, message)) => {
            eprintln!("{}", error_record(category, &message));
            ExitCode::from(1)
        }
    }
}

/// Honors SIM_THREADS as a cap on the worker count; the default is the
/// hardware parallelism rayon picks on its own.
fn install_thread_pool() -> Result<(), String> {
    match std::env::var("SIM_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("SIM_THREADS must be a positive integer".into())
        }
        Ok(raw) => match raw.parse::<usize>() {
            Ok(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("cannot configure {n} worker threads: {e}")),
            _ => Err(format!(
                "SIM_THREADS must be a positive integer, got `{raw}`"
            )),
        },
    }
}

type Failure = (&'static str, String);

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Evolve(args) => run_mode("evolve", args),
        Command::Spectrum(args) => run_mode("spectrum", args),
        Command::Chi(args) => run_mode("chi", args),
        Command::Effective(args) => run_mode("effective", args),
        Command::Validity(args) => run_mode("validity", args),
        Command::Figure { name, args } => run_figure(&name, args),
    }
}

/// Entries contributed by --config and the trailing overrides.
fn user_layers(args: &RunArgs) -> Result<(Vec<Entry>, Vec<Entry>), Failure> {
    let file = match &args.config {
        None => Vec::new(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                (
                    "io",
                    format!("cannot read config {}: {e}", path.display()),
                )
            })?;
            config::file_entries(&text).map_err(|e| ("parse", e.to_string()))?
        }
    };
    let overrides =
        config::override_entries(&args.overrides).map_err(|e| ("parse", e.to_string()))?;
    Ok((file, overrides))
}

fn run_mode(mode: &'static str, args: RunArgs) -> Result<(), Failure> {
    let (file, overrides) = user_layers(&args)?;
    let mut entries = file;
    entries.push(Entry::new("mode", mode, Source::Subcommand));
    entries.extend(overrides);
    run_entries(&entries, &args)
}

fn run_figure(name: &str, args: RunArgs) -> Result<(), Failure> {
    let recipe = recipes::lookup(name).ok_or_else(|| {
        (
            "usage",
            format!(
                "unknown preset `{name}`; available presets: {}",
                recipes::names().join(", ")
            ),
        )
    })?;
    let (file, overrides) = user_layers(&args)?;
    for preset_entries in recipe.run_entries() {
        let mut entries = preset_entries;
        entries.extend(file.iter().cloned());
        entries.extend(overrides.iter().cloned());
        run_entries(&entries, &args)?;
    }
    Ok(())
}

fn run_entries(entries: &[Entry], args: &RunArgs) -> Result<(), Failure> {
    let cfg = config::build(entries).map_err(|e| ("parse", e.to_string()))?;
    let paths = runner::run(&cfg, &args.out).map_err(|e| (e.category(), e.to_string()))?;
    for path in paths {
        println!("{}", path.display());
    }
    Ok(())
}
