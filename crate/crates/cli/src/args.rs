use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use spinrevival::{HalfIntegerSpin, Rational, SpinState, C64};

#[derive(Parser, Debug)]
#[command(
    name = "spinrevival",
    version,
    about = "Revival and tunneling experiments for a single anisotropic spin"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact time series of <S> and the amplitudes (CSV)
    Evolve(EvolveArgs),
    /// Fourier coefficients of <S_x>, <S_y> (CSV)
    Spectrum(SpectrumArgs),
    /// Exact EVRT, QRT and their ratio
    Revival(RevivalArgs),
    /// Revival table over a list of bz values (CSV)
    Sweep(SweepArgs),
    /// RK4 run with a transverse field plus a JSON tunneling report
    Tunnel(TunnelArgs),
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// Spin quantum number, e.g. 1/2, 1, 3/2
    #[arg(long)]
    pub spin: HalfIntegerSpin,
    /// Longitudinal field, decimal or exact a/b
    #[arg(long, allow_hyphen_values = true)]
    pub bz: Scalar,
    /// Anisotropy constant, decimal or exact a/b
    #[arg(long)]
    pub k: Scalar,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Preset (top, bottom, uniform, pair) or comma-separated complex amplitudes from m=+s down
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    pub state: StateArg,
    #[arg(long)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    /// Output path; standard output if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Reserved for random-state presets
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value = "uniform", allow_hyphen_values = true)]
    pub state: StateArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RevivalArgs {
    #[arg(long)]
    pub spin: HalfIntegerSpin,
    /// Ratio N = bz / k as exact a/b; alternative to --bz
    #[arg(long, allow_hyphen_values = true, conflicts_with = "bz")]
    pub n: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub bz: Option<Scalar>,
    #[arg(long)]
    pub k: Scalar,
    /// Declare N irrational; both revival times are then infinite
    #[arg(long, conflicts_with_all = ["n", "bz"])]
    pub irrational: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub spin: HalfIntegerSpin,
    /// Comma-separated exact bz values
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub bz: Vec<Scalar>,
    #[arg(long)]
    pub k: Scalar,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TunnelArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Transverse field
    #[arg(long, allow_hyphen_values = true)]
    pub bx: Scalar,
    #[arg(long, default_value = "bottom", allow_hyphen_values = true)]
    pub state: StateArg,
    #[arg(long, default_value_t = 1e4)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub dt: f64,
    #[arg(long, default_value_t = 10)]
    pub record_every: usize,
    /// Trajectory CSV path; standard output if absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report path; defaults to standard output when --out is a file, else standard error
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Reserved for random-state presets
    #[arg(long)]
    pub seed: Option<u64>,
}

/// A number given either exactly as `a` / `a/b`, or as a decimal float.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }
}

impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Ok(r) = s.parse::<Rational>() {
            return Ok(Scalar::Exact(r));
        }
        if s.contains('/') {
            return Err(format!("{s:?} is not a valid a/b rational"));
        }
        match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Scalar::Float(x)),
            _ => Err(format!("{s:?} is neither a number nor an a/b rational")),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateArg {
    Top,
    Bottom,
    Uniform,
    Pair,
    /// Raw amplitudes ordered from m = +s to m = -s; normalized before use.
    Amplitudes(Vec<C64>),
}

impl StateArg {
    pub fn build(&self, spin: HalfIntegerSpin) -> spinrevival::Result<SpinState> {
        Ok(match self {
            StateArg::Top => SpinState::top(spin),
            StateArg::Bottom => SpinState::bottom(spin),
            StateArg::Uniform => SpinState::uniform(spin),
            StateArg::Pair => SpinState::pair(spin),
            StateArg::Amplitudes(a) => spinrevival::normalize(a, spin)?,
        })
    }
}

impl FromStr for StateArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "top" => Ok(StateArg::Top),
            "bottom" => Ok(StateArg::Bottom),
            "uniform" => Ok(StateArg::Uniform),
            "pair" => Ok(StateArg::Pair),
            list => list
                .split(',')
                .map(|a| {
                    a.trim()
                        .parse::<C64>()
                        .map_err(|_| format!("{a:?} is not a preset or a complex amplitude"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(StateArg::Amplitudes),
        }
    }
}
