use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use photon_drag::cli::{self, Format, Invocation, Task};

#[derive(Parser)]
#[command(name = "photon-drag", version, about = "Photon occupancy kinetics under carrier drag")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one photon mode in time.
    Evolve(RunArgs),
    /// Growth increments and stationary limits over a (u, cos alpha, q) grid.
    Sweep(RunArgs),
    /// Propagate a pulse through an absorber or amplifier.
    Pulse(RunArgs),
    /// Doppler-shifted frequencies and wavelengths.
    Doppler(RunArgs),
    /// Mode mass, relaxation time and occupancy decomposition.
    Observables(RunArgs),
    /// Print the config schema, unit conventions and exit codes.
    Schema,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides `output.path`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (task, run) = match args.command {
        Command::Schema => {
            print!("{}", cli::SCHEMA);
            return ExitCode::SUCCESS;
        }
        Command::Evolve(r) => (Task::Evolve, r),
        Command::Sweep(r) => (Task::Sweep, r),
        Command::Pulse(r) => (Task::Pulse, r),
        Command::Doppler(r) => (Task::Doppler, r),
        Command::Observables(r) => (Task::Observables, r),
    };
    let inv = Invocation {
        task: Some(task),
        config: run.config,
        out: run.out,
        format: run.format,
        threads: run.threads,
    };
    match cli::run(&inv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("photon-drag: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
