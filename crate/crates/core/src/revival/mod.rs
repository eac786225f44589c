//! Exact revival times of expectation values (EVRT) and of the wave function (QRT).
//!
//! With `N = bz / K` rational, every characteristic frequency is a rational
//! multiple of `K / hbar`. The shortest common period is `2 pi hbar / (g K)`
//! where `g` is the largest rational dividing all of them, computed exactly by
//! clearing denominators and taking an integer gcd.

pub mod closed_form;
mod rational;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use rational::Rational;

use crate::error::{Error, Result};
use crate::exact_evolution::FourierSpectrum;
use crate::spin_algebra::{HalfIntegerSpin, SpinState, HBAR};

/// Number-theoretic class of `N = bz / K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioClass {
    Integer(BigInt),
    /// Reduced `a / b` with `b > 1`.
    NonIntegerRational {
        a: BigInt,
        b: BigInt,
    },
    /// Irrationality cannot be detected from a finite input; the caller declares it.
    DeclaredIrrational,
}

impl RatioClass {
    pub fn classify(n: &Rational) -> Self {
        if n.is_integer() {
            RatioClass::Integer(n.numer().clone())
        } else {
            RatioClass::NonIntegerRational {
                a: n.numer().clone(),
                b: n.denom().clone(),
            }
        }
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            RatioClass::Integer(n) => Some(Rational::from_integer(n.clone())),
            RatioClass::NonIntegerRational { a, b } => Rational::new(a.clone(), b.clone()).ok(),
            RatioClass::DeclaredIrrational => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RatioClass::Integer(_) => "integer",
            RatioClass::NonIntegerRational { .. } => "rational",
            RatioClass::DeclaredIrrational => "irrational",
        }
    }
}

/// `None` stands for an explicitly declared irrational ratio.
pub fn classify_ratio(n: Option<&Rational>) -> RatioClass {
    n.map_or(RatioClass::DeclaredIrrational, RatioClass::classify)
}

/// Nonzero frequencies in units of `K / hbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencySet {
    values: Vec<Rational>,
}

impl FrequencySet {
    /// Drops exact zeros (static terms); fails if nothing is left.
    pub fn new(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let values: Vec<_> = values.into_iter().filter(|v| !v.is_zero()).collect();
        if values.is_empty() {
            return Err(Error::StaticSpectrum);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Revival time as an exact multiple of `pi hbar / K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevivalTime {
    Finite { coefficient: Rational },
    Infinite,
}

impl RevivalTime {
    pub fn coefficient(&self) -> Option<&Rational> {
        match self {
            RevivalTime::Finite { coefficient } => Some(coefficient),
            RevivalTime::Infinite => None,
        }
    }

    /// The revival time for anisotropy `k`, `f64::INFINITY` if infinite.
    pub fn time(&self, k: f64) -> f64 {
        match self {
            RevivalTime::Finite { coefficient } => coefficient.to_f64() * PI * HBAR / k,
            RevivalTime::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RevivalTime::Finite { .. })
    }
}

/// `omega_i / (K / hbar) = -N - (2s - (2i - 1))` for `i = 1 ..= 2s`.
pub fn evrt_frequencies(spin: HalfIntegerSpin, n: &Rational) -> Result<FrequencySet> {
    FrequencySet::new(evrt_terms(spin, n))
}

fn evrt_terms(spin: HalfIntegerSpin, n: &Rational) -> impl Iterator<Item = Rational> + '_ {
    let twice_s = i64::from(spin.twice());
    (1..=twice_s).map(move |i| -(n + &Rational::from(twice_s - (2 * i - 1))))
}

/// Expectation-value frequencies restricted to harmonics the state actually excites.
///
/// Harmonic `i` is kept when `|phi_{s-i+1}| |phi_{s-i}| > tol`.
pub fn evrt_frequencies_for_state(
    psi0: &SpinState,
    n: &Rational,
    tol: f64,
) -> Result<FrequencySet> {
    let phi = psi0.amplitudes();
    FrequencySet::new(
        evrt_terms(psi0.spin(), n)
            .enumerate()
            .filter(|(i, _)| phi[*i].norm() * phi[*i + 1].norm() > tol)
            .map(|(_, w)| w),
    )
}

/// Eigenphase frequencies `E_m / K = -m N - m^2` for every level `m = s ..= -s`.
pub fn qrt_frequencies(spin: HalfIntegerSpin, n: &Rational) -> Result<FrequencySet> {
    FrequencySet::new((0..spin.dimension()).map(|j| {
        let m = Rational::new(spin.twice_m(j), 2).expect("nonzero denominator");
        -(&(&m * n) + &(&m * &m))
    }))
}

/// Largest positive rational `g` with `v / g` an integer for every `v` in the set.
pub fn rational_gcd(set: &FrequencySet) -> Rational {
    let common_den = set
        .values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numerator = set.values.iter().fold(BigInt::zero(), |acc, v| {
        let scaled = v.numer() * (&common_den / v.denom());
        acc.gcd(&scaled)
    });
    Rational::new(numerator, common_den).expect("lcm of denominators is nonzero")
}

/// Revival coefficient `2 / g`, i.e. `T = (2/g) pi hbar / K`.
pub fn revival_time(set: &FrequencySet) -> RevivalTime {
    let g = rational_gcd(set);
    RevivalTime::Finite {
        coefficient: &Rational::from(2) / &g,
    }
}

/// `T = 2 pi hbar / (g |k|)`.
pub fn period(set: &FrequencySet, k: f64) -> Result<f64> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::InvalidAnisotropy(k));
    }
    Ok(2.0 * PI * HBAR / (rational_gcd(set).to_f64() * k.abs()))
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidAnisotropy(k))
    }
}

/// Expectation-value revival time.
pub fn evrt(spin: HalfIntegerSpin, ratio: &RatioClass, k: f64) -> Result<RevivalTime> {
    check_k(k)?;
    match ratio.value() {
        None => Ok(RevivalTime::Infinite),
        Some(n) => Ok(revival_time(&evrt_frequencies(spin, &n)?)),
    }
}

/// Wave-function revival time, global phase included.
pub fn qrt(spin: HalfIntegerSpin, ratio: &RatioClass, k: f64) -> Result<RevivalTime> {
    check_k(k)?;
    match ratio.value() {
        None => Ok(RevivalTime::Infinite),
        Some(n) => Ok(revival_time(&qrt_frequencies(spin, &n)?)),
    }
}

/// `QRT / EVRT` as an exact rational.
pub fn revival_ratio(spin: HalfIntegerSpin, ratio: &RatioClass, k: f64) -> Result<Rational> {
    let e = evrt(spin, ratio, k)?;
    let q = qrt(spin, ratio, k)?;
    match (q.coefficient(), e.coefficient()) {
        (Some(q), Some(e)) => Ok(q / e),
        _ => Err(Error::InfiniteRevival),
    }
}

/// Frequencies with `|omega|` at or below this are treated as static terms.
const STATIC_FREQUENCY: f64 = 1e-12;

/// Smallest `T` in `(0, t_max]` at which every harmonic of `spec` completes an
/// integer number of cycles to within `tol` cycles.
///
/// Any common period is a multiple of the period of the slowest harmonic, so
/// the candidates are enumerated exactly as `n * 2 pi / |omega_min|`. Returns
/// `None` when no candidate up to `t_max` qualifies or the spectrum is static.
pub fn brute_force_period(spec: &FourierSpectrum, t_max: f64, tol: f64) -> Option<f64> {
    let omegas: Vec<f64> = spec
        .terms
        .iter()
        .map(|t| t.omega.abs())
        .filter(|w| *w > STATIC_FREQUENCY)
        .collect();
    let slowest = omegas.iter().copied().fold(f64::INFINITY, f64::min);
    if !slowest.is_finite() || t_max <= 0.0 {
        return None;
    }
    let base = 2.0 * PI / slowest;
    let max_n = (t_max / base * (1.0 + 1e-12)).floor() as u64;
    (1..=max_n).map(|n| n as f64 * base).find(|&t| {
        omegas.iter().all(|w| {
            let cycles = w * t / (2.0 * PI);
            (cycles - cycles.round()).abs() <= tol
        })
    })
}
