//! `shatter`: deterministic, scriptable access to every operation in the
//! workspace. JSON for single results, CSV for tables and curves; payload
//! on stdout, diagnostics on stderr. Exit codes: 0 ok, 2 input error,
//! 3 resource error.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use shatter_core::Error;

#[derive(Parser)]
#[command(name = "shatter", version, about = "shattered-submatrix toolkit")]
struct Cli {
    /// Worker threads for parallel counting; results are identical for any
    /// value.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count shattered column d-subsets of a matrix file.
    Count(commands::CountArgs),
    /// Build a registered construction and write its matrix.
    Construct(commands::ConstructArgs),
    /// Maximize the Lagrangian of the shattering hypergraph.
    Lagrangian(commands::LagrangianArgs),
    /// Closed-form bounds, rate functions, tables and curves.
    #[command(subcommand)]
    Bounds(commands::BoundsCmd),
    /// Exact brute-force oracles at desk scale.
    Oracle(commands::OracleArgs),
    /// Minimum-shattering construction and formula.
    Gmin(commands::GminArgs),
    /// Covering arrays: verify, build by deletion, or run a pipeline.
    #[command(subcommand)]
    Ca(commands::CaCmd),
}

fn main() {
    // downstream `head`-style consumers close the pipe early; die quietly
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be positive");
            std::process::exit(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: failed to size the worker pool: {e}");
            std::process::exit(3);
        }
    }
    let result = match cli.command {
        Command::Count(args) => commands::run_count(args),
        Command::Construct(args) => commands::run_construct(args),
        Command::Lagrangian(args) => commands::run_lagrangian(args),
        Command::Bounds(cmd) => commands::run_bounds(cmd),
        Command::Oracle(args) => commands::run_oracle(args),
        Command::Gmin(args) => commands::run_gmin(args),
        Command::Ca(cmd) => commands::run_ca(cmd),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        3
    } else {
        2
    }
}
