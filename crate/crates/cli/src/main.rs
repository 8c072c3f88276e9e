//! `crystal-pop`: generate type-A crystals, run pop-stack dynamics, test
//! lattice structure and run the verification suites.
//!
//! Exit codes: 0 success, 1 a property check failed, 2 invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "crystal-pop", version, about = "Type-A crystal posets: pop-stack dynamics, keys and lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate B_λ^n.
    Gen {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Pop_◊ orbits: the longest orbit, one trajectory (--element), or a
    /// sweep over shapes (--max-n, --max-cells).
    Pop {
        #[command(flatten)]
        shape: OptShapeArgs,
        /// Starting tableau, e.g. "1,2/3".
        #[arg(long)]
        element: Option<String>,
        #[command(flatten)]
        bounds: SweepArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Pop-stack sorting on a permutation, or the longest orbit over S_m
    /// for every m up to --max-n.
    PermPop {
        /// Permutation in one-line notation, e.g. 532481976 or 10,2,1,...
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Decide whether B_λ^n is a lattice, with a witness when it is not.
    Lattice {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the lattice classification with brute force over a range.
    Classify {
        #[command(flatten)]
        bounds: SweepArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Property suites for one crystal (--shape, --n), or the Coxeter
    /// lemma suite for S_m (--n m without --shape).
    Verify {
        #[command(flatten)]
        shape: OptShapeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct ShapeArgs {
    /// Partition "λ1,λ2,…"; the empty string is the zero weight.
    #[arg(long, allow_hyphen_values = true)]
    shape: String,
    /// Rank n: entries run over 1..=n+1.
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct OptShapeArgs {
    #[arg(long, allow_hyphen_values = true)]
    shape: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_cells: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Vertex cap; defaults to CRYSTAL_POP_CAP or 2000000.
    #[arg(long)]
    cap: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(commands::Status::Passed) => ExitCode::SUCCESS,
        Ok(commands::Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
