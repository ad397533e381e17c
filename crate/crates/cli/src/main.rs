use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "hamindex", version, about = "Wiener/Harary indices and Hamiltonicity checks for small graphs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n, e, minimum degree, diameter, W and H of every graph in the files
    /// (graph6 lines or edge lists).
    Index { files: Vec<PathBuf> },
    /// Build a family member, e.g. `N:n=9,k=2`, `B:n=3,k=1`, `G1:n=7,i=1`.
    Gen { spec: String },
    /// Hamiltonicity and traceability with certificates.
    Check {
        files: Vec<PathBuf>,
        /// Search node budget (default from HAMINDEX_BUDGET, else 1e8).
        #[arg(long, env = "HAMINDEX_BUDGET")]
        budget: Option<u64>,
    },
    /// Exhaustively check a claim over ranges of n and k.
    Verify {
        claim: String,
        /// Order (half-order for bipartite claims): `A`, `A..B` or `A..=B`,
        /// both ends inclusive.
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: Option<String>,
        /// Allow parameters outside the claim's stated range.
        #[arg(long)]
        exploratory: bool,
        /// auto, full, complement or closure-reduced.
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Directory for per-split checkpoints; reruns resume from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, env = "HAMINDEX_BUDGET")]
        budget: Option<u64>,
    },
    /// Extremal W or H over a class, e.g. `min-wiener/non-hamiltonian`.
    Search {
        problem: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, env = "HAMINDEX_BUDGET")]
        budget: Option<u64>,
    },
    /// Audit the exceptional sets against the closed-form bounds.
    Audit {
        #[arg(long, env = "HAMINDEX_BUDGET")]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Table => Format::Table,
    };
    match commands::run(cli.command, cli.jobs).and_then(|(out, status)| {
        let text = out.render(format)?;
        match &cli.out {
            Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
            None => print!("{text}"),
        }
        Ok(status)
    }) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
