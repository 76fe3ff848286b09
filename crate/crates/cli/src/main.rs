use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eofkit_cli::commands::{cmd_check, cmd_compute, cmd_demo, ComputeArgs};
use eofkit_cli::demos::DemoArgs;

/// Entanglement-of-formation toolkit for bipartite states.
///
/// Reports go to stdout as JSON; logs and diagnostics go to stderr.
/// Exit codes: 0 success, 2 invalid input, 3 invalid config, 4 unknown demo.
#[derive(Parser)]
#[command(name = "eofkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute EoF, spectral bound, CNT entropy and a PPT verdict for a
    /// JSON state file
    Compute {
        /// State file ({"schema":1,"d1":..,"d2":..,"matrix":[[re,im],..]})
        state: PathBuf,
        /// Key-value config file (cardinality, restarts, max_iterations,
        /// objective_tolerance, seed); flags below override it
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of multistart restarts
        #[arg(long)]
        restarts: Option<usize>,
        /// Master seed for the estimator
        #[arg(long)]
        seed: Option<u64>,
        /// Decomposition cardinality (defaults to rank²)
        #[arg(long)]
        cardinality: Option<usize>,
        /// Attach the witnessing decomposition to the report
        #[arg(long)]
        emit_witness: bool,
        /// Re-export the validated state to this path (17 significant digits)
        #[arg(long, value_name = "PATH")]
        emit_state: Option<PathBuf>,
    },
    /// Run a named demo: singlet, maxent-d, werner-sweep, tiles,
    /// subadditivity, convexity
    Demo {
        name: String,
        /// Local dimension for maxent-d
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Number of sweep intervals for werner-sweep (grid+1 points)
        #[arg(long, default_value_t = 10)]
        grid: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// PPT separability verdict for a JSON state file
    Check { state: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            state,
            config,
            restarts,
            seed,
            cardinality,
            emit_witness,
            emit_state,
        } => cmd_compute(&ComputeArgs {
            state,
            config,
            restarts,
            seed,
            cardinality,
            emit_witness,
            emit_state,
        }),
        Command::Demo { name, d, grid, seed } => cmd_demo(&name, &DemoArgs { d, grid, seed }),
        Command::Check { state } => cmd_check(&state),
    };
    match result {
        Ok(payload) => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
