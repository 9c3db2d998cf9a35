use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Secrecy limits of Gaussian and Rayleigh-fading wiretap channels.
#[derive(Debug, Parser)]
#[command(name = "secrecy-lab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity at one operating point and print a JSON record.
    Eval(EvalArgs),
    /// Evaluate a quantity over a grid and write a CSV dataset.
    Sweep(SweepArgs),
    /// Compare closed forms against Monte-Carlo estimates.
    Verify(VerifyArgs),
    /// Write the canonical figure datasets into a directory.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalQuantity {
    /// P(C_s > 0) from average SNRs.
    ProbPositive,
    /// P(C_s > 0) from distances and pathloss exponent.
    ProbPositiveGeometry,
    /// Minimum SNR ratio / maximum distance ratio for P(C_s > 0) >= --p0.
    Threshold,
    /// Outage probability at target rate --rate.
    Outage,
    /// epsilon-outage secrecy capacity.
    OutageCapacity,
    /// Average secrecy rate (1 - P_out(R)) R at --rate.
    AvgRate,
    /// Target rate maximising the average secrecy rate.
    OptimalRate,
    /// Average secrecy rate with perfect wiretap CSI.
    PerfectCsiRate,
    /// Secrecy capacity of the Gaussian wiretap channel.
    Gaussian,
    /// Upper bound on the imperfect-CSI secrecy-outage probability.
    CsiBound,
    /// P(estimate < true wiretap SNR | --gamma-w-db).
    Underestimate,
    /// Monte-Carlo estimate of P(C_s > 0).
    McProbPositive,
    /// Monte-Carlo estimate of the outage probability.
    McOutage,
    /// Monte-Carlo estimate of the perfect-CSI average secrecy rate.
    McPerfectCsiRate,
    /// Monte-Carlo imperfect-CSI outage and throughputs.
    ImperfectCsi,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    /// Monte-Carlo samples.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Base seed.
    #[arg(long, env = "SECRECY_LAB_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Independent random streams (the result depends on this, not on thread count).
    #[arg(long, default_value_t = 8)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    pub quantity: EvalQuantity,
    /// Main-channel average SNR in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub gbar_m_db: Option<f64>,
    /// Wiretap-channel average SNR in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub gbar_w_db: Option<f64>,
    /// Instantaneous wiretap SNR in dB (for `underestimate`).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_w_db: Option<f64>,
    /// Target secrecy rate, bits per complex channel use.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Outage probability for the epsilon-outage capacity.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Target probability of positive secrecy (for `threshold`).
    #[arg(long)]
    pub p0: Option<f64>,
    /// Per-component variance of the wiretap channel estimation error.
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Pathloss exponent.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Alice–Bob distance.
    #[arg(long)]
    pub dm: Option<f64>,
    /// Alice–Eve distance.
    #[arg(long)]
    pub dw: Option<f64>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// JSON sweep specification. When given, the single-curve flags are ignored.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Quantity for a single-curve sweep (snake_case name, e.g. outage_prob).
    #[arg(long)]
    pub quantity: Option<String>,
    /// X axis for a single-curve sweep (e.g. gbar_m_db).
    #[arg(long)]
    pub x_axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 61)]
    pub x_points: usize,
    /// Log-spaced grid instead of linear.
    #[arg(long)]
    pub log_grid: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub gbar_m_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gbar_w_db: Option<f64>,
    #[arg(long)]
    pub rate: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Divide rates by log2(1 + gbar_m).
    #[arg(long)]
    pub normalize: bool,
    /// Attach Monte-Carlo columns with this many samples per cell.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, env = "SECRECY_LAB_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub mc: McArgs,
    /// Per-case CSV output.
    #[arg(long, default_value = "verify.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub mc: McArgs,
}
