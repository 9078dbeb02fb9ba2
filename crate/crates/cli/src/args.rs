//! Command-line surface.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "strobo",
    version,
    about = "Spectra, identities, and discrete-time evolution of emergent Hamilton operators",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues of an oscillator discretization against the closed form.
    Spectrum(SpectrumArgs),
    /// Convergence order of a tracked mode toward its continuum value.
    Converge(ConvergeArgs),
    /// Discrete-time evolution under a clock distribution.
    Evolve(EvolveArgs),
    /// Spin-regularization identity residuals and spectra.
    Su2Check(Su2Args),
    /// Free-particle lattice spectrum and the on-shell cross-check.
    Particle(ParticleArgs),
    /// Run the whole validation battery and emit a machine-readable summary.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OscModel {
    /// One-sided difference (complex spectrum at finite N).
    #[value(name = "osc-a")]
    OscA,
    /// Centered difference (Hermitian, real spectrum).
    #[value(name = "osc-b")]
    OscB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClockKind {
    Delta,
    Gaussian,
    Uniform,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub model: OscModel,
    /// Number of grid sites.
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Twist phase on the periodic wrap.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub delta: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub model: OscModel,
    /// Tracked mode label (1-based).
    #[arg(long, default_value_t = 1)]
    pub mode: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub delta: f64,
    /// Site counts: a comma list ("64,128,256") and/or doubling ranges
    /// ("64..4096").
    #[arg(long = "Ns", default_value = "64..4096")]
    pub ns: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long, value_enum, default_value = "osc-b")]
    pub model: OscModel,
    #[arg(long = "N", default_value_t = 32)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub delta: f64,
    #[arg(long, value_enum, default_value = "delta")]
    pub clock: ClockKind,
    /// Gaussian clock decay rate.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Uniform clock support width.
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Physical time step.
    #[arg(long = "T", default_value_t = 1.0)]
    pub t_step: f64,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Quadrature nodes for the clock average.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Initial state: single mode label, or 0 for a flat superposition of
    /// the lowest four modes.
    #[arg(long, default_value_t = 0)]
    pub init_mode: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct Su2Args {
    /// Spin, as a decimal ("0.5", "10") or fraction ("1/2").
    #[arg(long)]
    pub s: String,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ParticleArgs {
    /// Spin determining the lattice size N = 2s + 1 and the canonical
    /// boundary phases.
    #[arg(long)]
    pub s: String,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long = "box-length", default_value_t = 10.0)]
    pub box_length: f64,
    /// Energy model: exact finite-spacing values or their continuum limit.
    #[arg(long, value_enum, default_value = "continuum")]
    pub energy: EnergyKind,
    /// Keep only modes obeying the massless on-shell relation.
    #[arg(long)]
    pub onshell: bool,
    /// Cap on emitted rows (0 = all).
    #[arg(long, default_value_t = 0)]
    pub limit: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnergyKind {
    Lattice,
    Continuum,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}
