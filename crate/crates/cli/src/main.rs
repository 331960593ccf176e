//! `glagr`: run the verification suite or individual computations.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "glagr", version, about = "Exact verification for the graded Lie algebra of vacuum gravity")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write a JSON report here.
    #[arg(long, global = true)]
    pub report: Option<std::path::PathBuf>,
    /// Restrict the suite to checks matching this glob (repeatable).
    #[arg(long, global = true)]
    pub only: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full verification suite.
    Verify {
        /// Instances per sampled identity.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Flip one sign in the ideal basis (mutation test).
        #[arg(long)]
        tamper_ideal: bool,
    },
    /// Run the rank-table checks.
    Ranks,
    /// Build a gauge from a Hermitian form and check its conditions.
    Gauge {
        #[arg(long, value_enum, conflicts_with_all = ["h_file", "random_seed"])]
        h: Option<HChoice>,
        /// JSON file with `re` and `im` 18×18 string matrices.
        #[arg(long)]
        h_file: Option<std::path::PathBuf>,
        /// Use the seeded random positive form.
        #[arg(long)]
        random_seed: Option<u64>,
    },
    /// Evolve the constant-coefficient gauge-fixed system at Minkowski.
    Evolve {
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        dims: usize,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, default_value_t = 0.4)]
        cfl: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Include the zeroth-order term.
        #[arg(long)]
        lower_order: bool,
        /// Write the energy trace as CSV.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// Run the Maurer-Cartan recursion on an example.
    Mc {
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, value_enum)]
        example: McExample,
        /// Comma-separated rational coordinates of the first-order class.
        #[arg(long)]
        xi: Option<String>,
        /// Tolerate nonzero H² and restrict the gravity fiber to frame classes.
        #[arg(long)]
        allow_obstructed: bool,
    },
    /// Connection, torsion, parallel metric and Ricci tensor of a background.
    Ricci {
        #[arg(long, value_enum)]
        background: Background,
        /// Wave profile `H(x0, x1, x2)`.
        #[arg(long = "H", default_value = "x1^2 - x2^2")]
        h: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HChoice {
    Identity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum McExample {
    Abelian,
    Endo,
    GravityFiber,
    Rees,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Background {
    Minkowski,
    Ppwave,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
