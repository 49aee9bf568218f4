//! `nisqlim`: batch front end for the analyses in the `nisqlim` crate.
//!
//! Exit codes: 0 all checks passed, 1 a bound check failed, 2 malformed input,
//! 3 input that parses but violates a precondition, 4 a size cap was hit,
//! 5 an I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "nisqlim", version, about = "Exact bound checks for noisy layered quantum devices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Full,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Chain,
    Grid,
}

/// Which side `A` of the register to cut off.
#[derive(clap::Args, Clone, Debug)]
pub struct CutArgs {
    /// Chain cut: `A = {0..cut−1}`. Defaults to `n/2`.
    #[arg(long, conflicts_with = "block")]
    pub cut: Option<usize>,
    /// Grid corner block `ROWSxCOLS`. Defaults to the top half of the lattice.
    #[arg(long)]
    pub block: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a circuit file and tabulate entropy, decay and correlation per layer.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        cut: CutArgs,
    },
    /// Emit the entanglement-versus-size curve as CSV.
    Curve {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Comma-separated noise strengths.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_enum, default_value_t = CurveKind::Chain)]
        topology: CurveKind,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form bounds for a register of `n` qubits.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// Depth for the decay bound; defaults to the crossover depth.
        #[arg(long)]
        t: Option<usize>,
        /// Total measured bits for the depth thresholds; defaults to `n`.
        #[arg(long)]
        total_bits: Option<usize>,
    },
    /// Randomized audit of the subset-entropy inequality.
    Shearer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Exact transcript law and coin-replacement gap of a scenario file.
    Hybrid {
        #[arg(long)]
        scenario: PathBuf,
        /// Overrides the file's `p`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = Variant::Half)]
        variant: Variant,
    },
    /// Backward light cone of a cut.
    Lightcone {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        cut: CutArgs,
        /// Print the cone report as JSON only.
        #[arg(long)]
        json: bool,
    },
    /// Entanglement bounds for the output of a noisy circuit.
    Entangle {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        cut: CutArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Product components per mixture; defaults to `4^min(|A|,|Ā|)`.
        #[arg(long)]
        components: Option<usize>,
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// Noise strength from coherence and gate times.
    EstimateP {
        /// Coherence time in seconds.
        #[arg(long, required_unless_present = "reference")]
        t1: Option<f64>,
        /// Two-qubit gate time in seconds.
        #[arg(long, required_unless_present = "reference")]
        tg: Option<f64>,
        #[arg(long, default_value = "device")]
        label: String,
        /// Estimate the built-in reference devices instead.
        #[arg(long, conflicts_with_all = ["t1", "tg"])]
        reference: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { circuit, p, cut } => commands::simulate(&circuit, p, &cut),
        Command::Curve { n_min, n_max, p, topology, out } => commands::curve(n_min, n_max, &p, topology, out.as_deref()),
        Command::Bounds { n, p, t, total_bits } => commands::bounds(n, p, t, total_bits),
        Command::Shearer { n, trials, seed } => commands::shearer(n, trials, seed),
        Command::Hybrid { scenario, p, variant } => commands::hybrid(&scenario, p, variant),
        Command::Lightcone { circuit, cut, json } => commands::lightcone(&circuit, &cut, json),
        Command::Entangle { circuit, p, cut, seed, restarts, components, iters } => {
            commands::entangle(&circuit, p, &cut, seed, restarts, components, iters)
        }
        Command::EstimateP { t1, tg, label, reference } => commands::estimate_p(t1, tg, &label, reference),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if out.all_passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: one or more bound checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
