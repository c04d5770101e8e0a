use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "thinsheet",
    version,
    about = "Scattering off thin sheets of harmonic-oscillator dipoles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reflection and transmission at a single (omega, k) point.
    Reflect(SweepArgs),
    /// Reflection and transmission over omega and k (or angle) grids.
    Sweep(SweepArgs),
    /// Convergence of thin plasma films towards the plasma sheet.
    SlabLimit(SlabArgs),
    /// Lattice sums: Epstein zeta, J_s(k), the interaction matrix, modes.
    Lattice(LatticeArgs),
    /// Collective lattice modes in the static approximation.
    Dispersion(DispersionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct MaterialArgs {
    /// Oscillator sheet `e,m,omega0,n[,c]`.
    #[arg(long, conflicts_with = "q")]
    pub material: Option<String>,
    /// Plasma sheet with this q-parameter (no restoring force).
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Speed of light for `--q`.
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    /// te, tm, p, all, or a comma list.
    #[arg(long)]
    pub pol: Option<String>,
    /// Frequency grid.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    /// Parallel wavenumber grid.
    #[arg(long, conflicts_with = "angle", allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Incidence angle grid in degrees, from the normal.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Default, Args)]
pub struct SlabArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    /// Smallest thickness, in units of c/omega.
    #[arg(long)]
    pub l_min: Option<f64>,
    /// Largest thickness, in units of c/omega.
    #[arg(long)]
    pub l_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(subcommand)]
    pub query: LatticeQuery,
}

#[derive(Debug, Default, Args)]
pub struct SumArgs {
    /// Square cutoff N (positional form of --cutoff).
    pub n: Option<usize>,
    #[arg(long, conflicts_with = "n")]
    pub cutoff: Option<usize>,
    /// Use the Ewald-converged sum instead of the direct one.
    #[arg(long)]
    pub ewald: bool,
}

#[derive(Debug, Subcommand)]
pub enum LatticeQuery {
    /// Epstein zeta Z_2(s) of the square lattice.
    Zeta {
        #[arg(allow_negative_numbers = true)]
        s: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// J_s(k), the lattice sum of exp(-i k.n) / |n|^s.
    #[command(name = "j", alias = "J")]
    J {
        #[arg(allow_negative_numbers = true)]
        s: f64,
        #[arg(allow_negative_numbers = true)]
        kx: f64,
        #[arg(allow_negative_numbers = true)]
        ky: f64,
        #[command(flatten)]
        sum: SumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Static interaction matrix, row-major.
    #[command(name = "t", alias = "T")]
    T {
        #[arg(allow_negative_numbers = true)]
        kx: f64,
        #[arg(allow_negative_numbers = true)]
        ky: f64,
        #[command(flatten)]
        sum: SumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Same as the top-level `dispersion` command.
    Dispersion(DispersionArgs),
}

#[derive(Debug, Default, Args)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    /// Lattice spacing a.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Grid of k_x a.
    #[arg(long, allow_hyphen_values = true)]
    pub kx: Option<String>,
    /// Grid of k_y a.
    #[arg(long, allow_hyphen_values = true)]
    pub ky: Option<String>,
    /// Leading-order (k-independent) roots only.
    #[arg(long)]
    pub leading: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
