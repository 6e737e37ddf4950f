//! `distort`: generate curves, measure distortion, run the verification
//! suites, anneal and check saturation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "distort", version, about = "Distortion of polygonal space curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated curve in the curve file format.
    Generate(GenerateArgs),
    /// Measure distortion, shadow, drcs and thickness of a curve.
    Compute(ComputeArgs),
    /// Run a randomized verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Simulated annealing inside U_C.
    Anneal(AnnealArgs),
    /// Windowed saturation diagnostic.
    Saturation(SaturationArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ngon,
    Comet,
    DragonsTooth,
    TorusKnot,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    pub kind: Kind,
    /// Corner exterior angle (comet, dragons-tooth).
    #[arg(long)]
    pub phi: Option<f64>,
    /// Vertex count (ngon, torus-knot).
    #[arg(long)]
    pub n: Option<usize>,
    /// Circumradius (ngon, default 1).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Small radius (dragons-tooth) or tube radius (torus-knot, default 1).
    #[arg(long)]
    pub r: Option<f64>,
    /// Large radius (dragons-tooth) or core radius (torus-knot, default 2).
    #[arg(long = "R")]
    pub big_r: Option<f64>,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    /// Comet segment length (default 1).
    #[arg(long)]
    pub segment_len: Option<f64>,
    /// Comet cap radius.
    #[arg(long)]
    pub arc_radius: Option<f64>,
    /// Points per arc (comet, dragons-tooth).
    #[arg(long)]
    pub arc_samples: Option<usize>,
    /// Add a hairpin twist with this foot gap.
    #[arg(long)]
    pub eps_twist: Option<f64>,
    /// Edge receiving the twist.
    #[arg(long, default_value_t = 0)]
    pub twist_edge: usize,
    /// Hairpin loop length (default half the edge).
    #[arg(long)]
    pub twist_loop: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long)]
    pub curve: PathBuf,
    /// Shadow samples per unit length.
    #[arg(long)]
    pub density: Option<f64>,
    /// Thickness threshold (default δ − 10⁻³).
    #[arg(long)]
    pub b: Option<f64>,
    /// drc threshold (default δ(1 − tol)).
    #[arg(long)]
    pub drc_k: Option<f64>,
    #[arg(long)]
    pub tol_argmax: Option<f64>,
    /// JSON report; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub shadow_csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// dq ≤ sec(κ/2) on random open arcs with κ < π.
    DsBound(DsBoundArgs),
    /// Subdivision scale against a sliding-window scan.
    MeasureLemma(MeasureLemmaArgs),
}

#[derive(Args, Debug)]
pub struct DsBoundArgs {
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = distort_core::verify::DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
    /// Where to dump a counterexample (default ds_counterexample.json).
    #[arg(long)]
    pub counterexample: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MeasureLemmaArgs {
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub counterexample: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnnealArgs {
    /// TOML configuration.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub curve: PathBuf,
    /// Best curve.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-step CSV trace.
    #[arg(long)]
    pub trace: PathBuf,
    /// JSON summary; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SaturationArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long, default_value_t = 1e-2)]
    pub eta: f64,
    /// Window length (default L/64).
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long, default_value_t = distort_core::optimizer::DEFAULT_KAPPA_MIN)]
    pub kappa_min: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(cli))
}
