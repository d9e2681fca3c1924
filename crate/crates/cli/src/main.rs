//! `smi`: command line front end for the coherence engine.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "smi",
    version,
    about = "Symbolic engine for symmetric bimonoidal intermuting categories"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit with status 1 when the answer is NONE, UNDECIDED, UNKNOWN or a failure.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Print objects and terms with Unicode connectives.
    #[arg(long, global = true)]
    pub unicode: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unit normal form of a formula.
    Nu { formula: String },
    /// Bot- and top-purity of a formula.
    Purity { formula: String },
    /// Canonical arrow between unit-free form sets.
    CanonSai { source: String, target: String },
    /// Canonical arrow between strict objects: a term, NONE or UNDECIDED.
    CanonArrow { source: String, target: String },
    /// Equality of two arrow terms by coherence.
    Equal {
        left: String,
        right: String,
        /// Print the purity and diversification evidence.
        #[arg(long)]
        explain: bool,
    },
    /// Factor a term into single-head terms.
    Develop { term: String },
    /// Number of ck generators in a term.
    CkCount { term: String },
    /// Remove units from a term with pure endpoints.
    UnitReduce { term: String },
    /// Maps of the simplicial categories.
    #[command(subcommand)]
    Simp(SimpCommand),
    /// The bar construction on tuples of objects.
    #[command(subcommand)]
    Bar(BarCommand),
    /// Exhaustive searches used as test oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Check the lax square on random triples drawn from the seed.
    Sweep {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SimpCommand {
    /// The composite f . g, applying g first.
    Compose { f: String, g: String },
    /// The partial map assigned to a simplicial map.
    Hj { f: String },
    /// ASCII diagram of a simplicial or partial map.
    Render { f: String },
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    /// Number of leading coordinates using \/ and bot.
    #[arg(long)]
    pub n: usize,
    /// Number of trailing coordinates using /\ and top.
    #[arg(long)]
    pub m: usize,
    /// Comma separated coordinate sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub shape: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum BarCommand {
    /// Apply a product map to the tuple of fresh letters.
    Eval {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Product map such as "<[0 1 3]@1->2 ; d(1)@2>".
        #[arg(long)]
        maps: String,
    },
    /// The comparison arrows from g*f* to (gf)*.
    Omega {
        #[command(flatten)]
        shape: ShapeArgs,
        f: String,
        g: String,
    },
    /// Check the lax associativity square for f, g, h.
    Laxcheck {
        #[command(flatten)]
        shape: ShapeArgs,
        f: String,
        g: String,
        h: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Breadth-first search over single ck steps between form sets.
    Reach {
        source: String,
        target: String,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = cli.global;
    match commands::run(&cli.command, &global) {
        Ok(out) => {
            if global.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text.trim_end());
            }
            if global.strict && out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if global.json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
