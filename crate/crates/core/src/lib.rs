//! Quantum dynamics of a single effective spin under uniaxial anisotropy.
//!
//! * [`spin_algebra`]: spin matrices and states.
//! * [`exact_evolution`]: exact phases and Fourier-series expectation values.
//! * [`revival`]: exact revival times from rational frequency sets.
//! * [`perturbed_dynamics`]: RK4 integration with a transverse field and
//!   tunneling-time analysis.

pub mod error;
pub mod exact_evolution;
pub mod perturbed_dynamics;
pub mod revival;
pub mod spin_algebra;

pub use error::{Error, Result};
pub use exact_evolution::{
    eval_series, evolve_exact, fourier_spectrum, sample_exact, spin1_reference, DiagonalModel,
    FourierSpectrum, FourierTerm, Magnetization, Trajectory,
};
pub use perturbed_dynamics::{FullModel, IntegratorConfig, TunnelingReport};
pub use revival::{
    brute_force_period, evrt, qrt, rational_gcd, revival_ratio, FrequencySet, RatioClass, Rational,
    RevivalTime,
};
pub use spin_algebra::{
    normalize, spin_matrices, Axis, HalfIntegerSpin, SpinMatrices, SpinOperatorMatrix, SpinState,
    C64, HBAR,
};
