use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

#[derive(Parser)]
#[command(name = "gencov", version, about = "Covers of voltage graphs with subgroup weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    /// One line per dart: `dart i beg v inv y`.
    Darts,
    /// Graphviz, one edge per dart pair.
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cover of a voltage graph spec.
    Cover {
        spec: PathBuf,
        /// Output file; a `.fibres` file with the fibre table is written next to it.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "darts")]
        format: Format,
        /// Normalise along the breadth-first spanning tree first.
        #[arg(long)]
        normalize: bool,
        /// Largest number of cover vertices plus darts to build.
        #[arg(long, default_value_t = gencov::cover::DEFAULT_COVER_CAP)]
        cap: usize,
    },
    /// Validate a spec and report connectivity, simplicity and faithfulness.
    Check {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Recover a voltage graph from a graph and a group of automorphisms.
    Reconstruct {
        #[arg(long)]
        graph: PathBuf,
        /// One generator per line in cycle notation over `v<i>` and `d<i>`.
        #[arg(long)]
        action: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Rebuild the cover and search for an isomorphism to the graph.
        #[arg(long)]
        verify: bool,
    },
    /// Make the voltages on a spanning tree trivial.
    Normalize {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// `auto` for the breadth-first tree from vertex 0, or tree darts such as `d0,d2`.
        #[arg(long = "normalize", visible_alias = "tree", default_value = "auto")]
        tree: String,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, default_value_t = gencov::selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Cover {
            spec,
            output,
            format,
            normalize,
            cap,
        } => commands::cover(&spec, output.as_deref(), format, normalize, cap),
        Command::Check { spec, json } => commands::check(&spec, json),
        Command::Reconstruct {
            graph,
            action,
            output,
            verify,
        } => commands::reconstruct(&graph, &action, output.as_deref(), verify),
        Command::Normalize { spec, output, tree } => commands::normalize(&spec, output.as_deref(), &tree),
        Command::Selftest { seed } => Ok(commands::selftest(seed)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
