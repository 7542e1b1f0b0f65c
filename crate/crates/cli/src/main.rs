//! `cvgraph`: apply, verify and explore rewriting rules on weighted graph states.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cvgraph", version, about = "Exact algebra of continuous-variable weighted graph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an op script to a graph.
    Apply {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        ops: OpSource,
        /// Write the result here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Directory receiving every intermediate graph as `step_NNN.cvg`.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print the stabilizer generator of every vertex.
    Stabilizers {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        xi: String,
    },
    /// Check every op of a script against the symplectic oracle.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        ops: OpSource,
        /// List every transported stabilizer generator.
        #[arg(long)]
        pauli_level: bool,
        /// Parameter of the stabilizer generators used in the transport check.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        xi: String,
    },
    /// Breadth-first exploration of the orbit of a graph.
    Orbit {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write every node to `<output>.graphs/<hash>.cvg`.
        #[arg(long)]
        save_graphs: bool,
    },
    /// Search for an op sequence turning one graph into another.
    Connect {
        #[arg(short = 'a', long = "from")]
        from: PathBuf,
        #[arg(short = 'b', long = "to")]
        to: PathBuf,
        #[command(flatten)]
        budget: Budget,
        /// Write the sequence here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a graph as Graphviz DOT.
    ExportDot {
        #[arg(short, long)]
        input: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OpSource {
    /// Op script file.
    #[arg(short, long)]
    script: Option<PathBuf>,
    /// Inline ops separated by `;`, e.g. "lg 1 1; f2 2".
    #[arg(long, allow_hyphen_values = true)]
    ops: Option<String>,
}

#[derive(Args)]
struct Budget {
    /// Comma-separated LG parameters.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Comma-separated scale factors; enables scale moves.
    #[arg(long)]
    lambda: Option<String>,
    /// Enable F² moves.
    #[arg(long)]
    f2: bool,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 10_000)]
    max_nodes: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::USAGE)
        }
    }
}
