//! `designlab`: verify, decompose and certify 2-designs; enumerate feasible
//! parameters for a prime λ.
//!
//! Exit codes: 0 when every requested certificate passes, 1 when one fails,
//! 2 on input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use designlab::permgroup::DEFAULT_SEED;

mod commands;
mod render;

use commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "designlab", version, about = "Exact tools for 2-designs and their automorphism groups")]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized checks in stabilizer-chain construction.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a design file is a 2-design and print its parameters.
    Verify { design: PathBuf },
    /// Decompose a design over a point partition.
    Decompose {
        design: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Automorphism generators; the partition must be invariant.
        #[arg(long)]
        gens: Option<PathBuf>,
        /// Also certify that λ is prime.
        #[arg(long)]
        lambda_prime: bool,
        /// Class used for the inner design.
        #[arg(long, default_value_t = 0)]
        delta: usize,
    },
    /// Enumerate feasible parameter tuples for a prime λ.
    Enum {
        #[arg(long)]
        lambda: u64,
        /// Also list rejected tuples with the first failed filter.
        #[arg(long)]
        keep_rejected: bool,
        /// CSV instead of a table.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Group-theoretic facts about generators acting on a design.
    Group {
        design: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// The parameter record for the Fermat prime 2^(2^j) + 1.
    Fermat {
        #[arg(long)]
        j: u32,
        /// Write the forced inner and quotient designs into this directory.
        #[arg(long)]
        emit_frame: Option<PathBuf>,
    },
    /// Full certificate for a design, a flag-transitive group and a partition.
    Certify {
        design: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Expected parameters as `v,b,r,k,lambda`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Search the first (16,6,2) difference set and develop it.
    Biplane {
        /// Write the design, translation generators and a coset partition.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        json: cli.json,
        seed: cli.seed,
        threads: cli.threads,
    };
    let outcome: Outcome = match cli.command {
        Command::Verify { design } => commands::verify(&ctx, &design),
        Command::Decompose {
            design,
            partition,
            gens,
            lambda_prime,
            delta,
        } => commands::decompose(&ctx, &design, &partition, gens.as_deref(), lambda_prime, delta),
        Command::Enum {
            lambda,
            keep_rejected,
            csv,
        } => commands::enumerate(&ctx, lambda, keep_rejected, csv),
        Command::Group {
            design,
            gens,
            partition,
        } => commands::group(&ctx, &design, &gens, partition.as_deref()),
        Command::Fermat { j, emit_frame } => commands::fermat(&ctx, j, emit_frame.as_deref()),
        Command::Certify {
            design,
            gens,
            partition,
            expect,
        } => commands::certify(&ctx, &design, &gens, &partition, expect.as_deref()),
        Command::Biplane { emit } => commands::biplane(&ctx, emit.as_deref()),
    };
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
