use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "plap", version, about = "Signless p-Laplacian spectra and bipartiteness ratios of graphs")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Root seed for every random choice.
    #[arg(long, global = true, env = "PLAP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for solver restarts.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Emit CSV instead of JSON.
    #[arg(long, global = true, conflicts_with_all = ["json", "text"])]
    pub csv: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Human-readable lines.
    #[arg(long, global = true, conflicts_with = "json")]
    pub text: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Always include vectors (hidden above 50 vertices otherwise).
    #[arg(long, global = true)]
    pub vector: bool,
    /// Add wall-clock phase timings to the report (breaks byte-reproducibility).
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_iters: usize,
    /// Random restarts per solve on top of the deterministic starts.
    #[arg(long, global = true, default_value_t = 8)]
    pub restarts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Min,
    Max,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Psi,
    Q2,
    Chi,
    Nu,
}

impl What {
    pub fn as_str(self) -> &'static str {
        match self {
            What::Psi => "psi",
            What::Q2 => "q2",
            What::Chi => "chi",
            What::Nu => "nu",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q_p (min) and/or lambda_p (max) at one exponent.
    Spectrum {
        graph: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Which::Both)]
        which: Which,
    },
    /// Continuation in p with the rounded ratio at every step.
    Sweep {
        graph: PathBuf,
        /// Strictly decreasing exponents, all > 1.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<f64>>,
    },
    /// Best near-bipartite pair from the minimizer at `p`.
    Extract {
        graph: PathBuf,
        #[arg(long, default_value_t = 1.05)]
        p: f64,
    },
    /// Run the inequality registry.
    Verify {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [1.1, 1.5, 2.0, 3.0])]
        p_list: Vec<f64>,
        /// Edge-deletion subgraphs per exponent.
        #[arg(long, default_value_t = 20)]
        subgraphs: usize,
    },
    /// Exact combinatorial or dense oracle.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_enum)]
        what: What,
    },
}

impl Command {
    pub fn graph_path(&self) -> &PathBuf {
        match self {
            Command::Spectrum { graph, .. }
            | Command::Sweep { graph, .. }
            | Command::Extract { graph, .. }
            | Command::Verify { graph, .. }
            | Command::Oracle { graph, .. } => graph,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Sweep { .. } => "sweep",
            Command::Extract { .. } => "extract",
            Command::Verify { .. } => "verify",
            Command::Oracle { .. } => "oracle",
        }
    }
}
