use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semcom::encoding::TieBreak;

mod commands;
mod render;
mod schemes;

#[derive(Parser)]
#[command(name = "semcom", version, about = "Distortion-cost regions of semantic encoding, decoding and CSED")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a language spec.
    Validate { spec: PathBuf },
    /// Print (and optionally export) a distortion-cost region.
    Region {
        kind: RegionKind,
        spec: PathBuf,
        #[arg(long, default_value = "lexicographic")]
        tie_break: TieBreak,
        /// Write the region vertices as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print a MAP decoder and its distortion.
    Decode {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = PriorArg::Rx)]
        prior: PriorArg,
        /// Also print the refined interpretation.
        #[arg(long)]
        refine: bool,
    },
    /// Check a structural property of the language; exits 1 when it fails.
    Check { property: Property, spec: PathBuf },
    /// Compare encoding, decoding and CSED.
    Compare {
        spec: PathBuf,
        #[arg(long, default_value = "lexicographic")]
        tie_break: TieBreak,
    },
    /// Brute-force enumeration over deterministic schemes.
    Oracle {
        target: OracleTarget,
        spec: PathBuf,
        /// Largest number of schemes to enumerate.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Monte Carlo estimate of (L, D) for a named scheme.
    Simulate {
        spec: PathBuf,
        /// language, decoding, decoding-rx, lower:<t>, upper:<t>, csed-lower:<t> or csed-upper:<t>
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "lexicographic")]
        tie_break: TieBreak,
    },
    /// Emit a built-in example spec.
    Example {
        name: ExampleName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionKind {
    Enc,
    Dec,
    Csed,
}

#[derive(Clone, Copy, ValueEnum)]
enum PriorArg {
    Tx,
    Rx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    SelfConsistency,
    HammingOpt,
    Theorem4,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleTarget {
    Frontier,
    Decoders,
    Global,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Gridworld,
    Nodshake,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Run(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
