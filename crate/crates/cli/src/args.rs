use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plasmon_core::model::ScreeningConvention;

#[derive(Debug, Parser)]
#[command(
    name = "plasmon",
    version,
    about = "Plasmon dispersion and matter-wave instability datasets",
    args_override_self = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file. Relative paths resolve against $PLASMON_OUT_DIR when set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Chemical potential fed to the screening formula: primary or paper-compat.
    #[arg(long, global = true, default_value = "primary", value_parser = parse_convention)]
    pub convention: ScreeningConvention,

    /// key=value material definitions (name=, mu0_eV=, Ep_eV=).
    #[arg(long, global = true)]
    pub materials: Option<PathBuf>,

    /// Named figure dataset; supplies the subcommand and its parameters.
    #[arg(long, global = true)]
    pub preset: Option<String>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

fn parse_convention(s: &str) -> Result<ScreeningConvention, String> {
    s.parse().map_err(|_| format!("expected primary or paper-compat, got '{s}'"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample E(k) for one or more screening values.
    Dispersion(DispersionArgs),
    /// Characteristic wavenumbers and regime of one beam state.
    Wavenumbers(BeamArgs),
    /// Speeds bounding each wavenumber regime.
    Regimes(PlasmaArgs),
    /// Closed-form driven field on a grid.
    Solve(SolveArgs),
    /// Persistent response amplitudes and phases.
    Steady(SteadyArgs),
    /// Field of a beam crossing a periodic lattice.
    Lattice(LatticeArgs),
    /// Beam speeds resonant with the lattice harmonics.
    Bragg(BraggArgs),
    /// Material constants and screening values.
    Material(MaterialArgs),
    /// Evaluate a target quantity over a parameter range.
    Sweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dispersion(_) => "dispersion",
            Command::Wavenumbers(_) => "wavenumbers",
            Command::Regimes(_) => "regimes",
            Command::Solve(_) => "solve",
            Command::Steady(_) => "steady",
            Command::Lattice(_) => "lattice",
            Command::Bragg(_) => "bragg",
            Command::Material(_) => "material",
            Command::Sweep(_) => "sweep",
        }
    }
}

/// Plasma state: either explicit `(μ, ξ)`, `(μ, θ)`, or a material with `θ`.
#[derive(Debug, Clone, Args)]
pub struct PlasmaArgs {
    /// Normalized chemical potential μ0/(2E_p).
    #[arg(long, conflicts_with = "material", allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Screening wavenumber in units of k_p.
    #[arg(long, conflicts_with = "theta", allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Temperature in units of T_p; sets ξ through the screening formula.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Host material (Al, Ag or a name from --materials).
    #[arg(long)]
    pub material: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BeamArgs {
    /// Beam speed in units of v_p; also the drive wavenumber.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub plasma: PlasmaArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DispersionArgs {
    /// Screening values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
    pub xi: Vec<f64>,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub kmin: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub kmax: f64,
    #[arg(long, default_value_t = 500)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    /// Drive amplitude.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub dphi0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub dpsi0: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also emit the RK4 reference integration as an "oracle" series.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub u0: f64,
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub beam: BeamArgs,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub u0: f64,
    /// Reciprocal lattice wavenumber in units of k_p.
    #[arg(long = "G", allow_negative_numbers = true)]
    pub g: f64,
    /// Lattice potential amplitude.
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub ug: f64,
    /// Harmonic driving the Bloch response.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Solve the periodic boundary-value problem instead (fundamental harmonic).
    #[arg(long)]
    pub bvp: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BraggArgs {
    #[command(flatten)]
    pub plasma: PlasmaArgs,
    #[arg(long = "G", allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, default_value_t = 3)]
    pub nmax: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    /// Material to report; every known material when omitted.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    Gamma,
    Mu,
    Theta,
    Xi,
    #[value(name = "G")]
    G,
}

impl SweepVar {
    pub fn label(self) -> &'static str {
        match self {
            SweepVar::Gamma => "gamma",
            SweepVar::Mu => "mu",
            SweepVar::Theta => "theta",
            SweepVar::Xi => "xi",
            SweepVar::G => "G",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    Wavenumbers,
    Steady,
    Regimes,
    Bragg,
}

impl SweepTarget {
    pub fn label(self) -> &'static str {
        match self {
            SweepTarget::Wavenumbers => "wavenumbers",
            SweepTarget::Steady => "steady",
            SweepTarget::Regimes => "regimes",
            SweepTarget::Bragg => "bragg",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Swept parameter.
    #[arg(long, value_enum)]
    pub var: SweepVar,
    /// First value of the swept parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    /// Last value, included exactly.
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    /// Number of evenly spaced values, at least 2.
    #[arg(long)]
    pub points: usize,
    /// Quantity evaluated at each point.
    #[arg(long, value_enum, default_value_t = SweepTarget::Wavenumbers)]
    pub target: SweepTarget,
    /// Fixed parameters; the swept one is taken from the range.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, conflicts_with = "material", allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, conflicts_with = "theta", allow_negative_numbers = true)]
    pub xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub material: Option<String>,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long = "G", allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub nmax: usize,
}
