//! `hgs`: classify groups of squarefree order, count Hopf-Galois structures
//! on cyclic extensions, print the prime-factor tables, and run the
//! brute-force verification oracles.

mod commands;
mod document;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hgs_core::holomorph::DEFAULT_BUDGET;

use commands::InvalidInput;

#[derive(Debug, Parser)]
#[command(name = "hgs", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Use `sigma`/`tau` instead of Greek letters in presentations.
    #[arg(long, global = true)]
    ascii: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every isomorphism type of group of order n.
    Groups { n: u64 },

    /// Count Hopf-Galois structures on a cyclic extension of degree n.
    Count {
        n: u64,
        /// Include every term of the factorisation sum (zero terms flagged).
        #[arg(long)]
        terms: bool,
        /// Include the per-type counts.
        #[arg(long)]
        per_type: bool,
    },

    /// Tabulate types and counts for a product of three or four primes.
    Table {
        #[arg(value_parser = ["three-prime", "four-prime"])]
        kind: String,
        #[arg(required = true, num_args = 3..=4)]
        primes: Vec<u64>,
    },

    /// Check closed forms against the holomorph oracles for each n.
    Verify {
        /// Values `n` or inclusive ranges `a..b`.
        #[arg(required = true)]
        targets: Vec<String>,
        /// Skip the permutation oracle when a holomorph has more than N
        /// elements (default: $HGS_BUDGET or 1000000).
        #[arg(long, value_name = "N")]
        skip_perm_over: Option<u64>,
        /// Treat skipped oracles as failures.
        #[arg(long)]
        strict: bool,
    },
}

fn budget(flag: Option<u64>) -> Result<u64, InvalidInput> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("HGS_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| InvalidInput(format!("HGS_BUDGET={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run(cli: Cli) -> anyhow::Result<commands::Outcome> {
    match cli.command {
        Command::Groups { n } => commands::groups(n, cli.ascii),
        Command::Count { n, terms, per_type } => commands::count(n, terms, per_type, cli.ascii),
        Command::Table { kind, primes } => commands::table(&kind, &primes),
        Command::Verify { targets, skip_perm_over, strict } => {
            commands::verify(&targets, budget(skip_perm_over)?, strict)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", out.doc.to_json()),
                Format::Csv => match out.csv.render() {
                    Ok(s) => print!("{s}"),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                },
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) if e.downcast_ref::<InvalidInput>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
