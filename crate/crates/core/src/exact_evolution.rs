//! Exact evolution under the diagonal Hamiltonian `H = -bz S_z - k S_z^2`.
//!
//! Each amplitude only picks up the phase `exp(-i E_m t / hbar)`, so the
//! transverse expectation values are finite Fourier series over the `2s`
//! nearest-neighbour phase differences.

use crate::error::{Error, Result};
use crate::spin_algebra::{
    expectation, spin_matrices, sx_element, HalfIntegerSpin, SpinMatrices, SpinState, C64, HBAR,
};

/// Uniaxial anisotropy `k` plus longitudinal field `bz` (both energies).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalModel {
    pub spin: HalfIntegerSpin,
    pub bz: f64,
    pub k: f64,
}

impl DiagonalModel {
    pub fn new(spin: HalfIntegerSpin, bz: f64, k: f64) -> Self {
        Self { spin, bz, k }
    }

    /// Energy of level `m`.
    pub fn energy_of(&self, m: f64) -> f64 {
        -m * self.bz - self.k * m * m
    }

    /// Level energies in basis order, `m = s ... -s`.
    pub fn energies(&self) -> Vec<f64> {
        (0..self.spin.dimension())
            .map(|j| self.energy_of(self.spin.m(j)))
            .collect()
    }
}

/// Expectation values of the three spin components.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Magnetization {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl Magnetization {
    pub fn of(mats: &SpinMatrices, psi: &SpinState) -> Result<Self> {
        Ok(Self {
            sx: expectation(&mats.x, psi)?,
            sy: expectation(&mats.y, psi)?,
            sz: expectation(&mats.z, psi)?,
        })
    }

    pub fn max_distance(&self, other: &Magnetization) -> f64 {
        (self.sx - other.sx)
            .abs()
            .max((self.sy - other.sy).abs())
            .max((self.sz - other.sz).abs())
    }
}

pub fn evolve_exact(psi0: &SpinState, model: &DiagonalModel, t: f64) -> SpinState {
    let amplitudes = psi0
        .amplitudes()
        .iter()
        .zip(model.energies())
        .map(|(a, e)| a * C64::from_polar(1.0, -e * t / HBAR))
        .collect();
    SpinState::from_raw(psi0.spin(), amplitudes)
}

/// One harmonic `alpha cos(omega t) + beta sin(omega t)` of `<S_x>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierTerm {
    /// Angular frequency, rad per time unit.
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum {
    pub terms: Vec<FourierTerm>,
    pub constant_sz: f64,
}

impl FourierSpectrum {
    /// Frequencies of the terms whose amplitude exceeds `tol`.
    pub fn active_frequencies(&self, tol: f64) -> Vec<f64> {
        self.terms
            .iter()
            .filter(|t| t.alpha.hypot(t.beta) > tol)
            .map(|t| t.omega)
            .collect()
    }
}

/// Characteristic frequency `omega_i = (-bz - (2s - (2i - 1)) k) / hbar`, 1-based `i`.
pub fn characteristic_frequency(model: &DiagonalModel, i: usize) -> f64 {
    let twice_s = f64::from(model.spin.twice());
    (-model.bz - (twice_s - (2.0 * i as f64 - 1.0)) * model.k) / HBAR
}

pub fn fourier_spectrum(psi0: &SpinState, model: &DiagonalModel) -> Result<FourierSpectrum> {
    check_spin(psi0, model)?;
    let phi = psi0.amplitudes();
    let s = model.spin;
    let terms = (1..=s.twice() as usize)
        .map(|i| {
            // phi[i - 1] is level s - (i - 1), phi[i] is level s - i
            let (p, q) = (phi[i - 1], phi[i]);
            let two_x = 2.0 * sx_element(s, i);
            FourierTerm {
                omega: characteristic_frequency(model, i),
                alpha: two_x * (p.re * q.re + p.im * q.im),
                beta: two_x * (-p.re * q.im + p.im * q.re),
            }
        })
        .collect();
    let constant_sz = phi
        .iter()
        .enumerate()
        .map(|(j, a)| HBAR * s.m(j) * a.norm_sqr())
        .sum();
    Ok(FourierSpectrum { terms, constant_sz })
}

/// Evaluates the series at time `t`.
///
/// `<S_y>` shares the `<S_x>` coefficients: `sum alpha sin(omega t) - beta cos(omega t)`.
pub fn eval_series(spec: &FourierSpectrum, t: f64) -> Magnetization {
    let (mut sx, mut sy) = (0.0, 0.0);
    for term in &spec.terms {
        let (sin, cos) = (term.omega * t).sin_cos();
        sx += term.alpha * cos + term.beta * sin;
        sy += term.alpha * sin - term.beta * cos;
    }
    Magnetization {
        sx,
        sy,
        sz: spec.constant_sz,
    }
}

/// Written-out spin-1 expectation values, used to cross-check the general series.
///
/// Frequencies follow the `(+bz - k)` sign of the second harmonic rather than
/// the general `omega_2 = -bz + k`, so the two code paths do not share sign
/// bookkeeping.
pub fn spin1_reference(psi0: &SpinState, model: &DiagonalModel, t: f64) -> Result<Magnetization> {
    if psi0.spin().twice() != 2 || model.spin.twice() != 2 {
        return Err(Error::WrongSpin {
            expected: "1".into(),
            found: psi0.spin().to_string(),
        });
    }
    let (up, zero, down) = (
        psi0.amplitudes()[0],
        psi0.amplitudes()[1],
        psi0.amplitudes()[2],
    );
    let pref = 2.0 * HBAR / std::f64::consts::SQRT_2;

    // conj(phi_{+1}) phi_0 rotates as exp(+i w1 t), w1 = (-bz - k)/hbar
    let c1 = up.conj() * zero;
    let w1 = (-model.bz - model.k) / HBAR;
    // conj(phi_0) phi_{-1} rotates as exp(-i w2 t), w2 = (bz - k)/hbar
    let c2 = zero.conj() * down;
    let w2 = (model.bz - model.k) / HBAR;

    let (s1, k1) = (w1 * t).sin_cos();
    let (s2, k2) = (w2 * t).sin_cos();

    let sx = pref
        * ((up.re * zero.re + up.im * zero.im) * k1
            + (zero.re * down.re + zero.im * down.im) * k2
            + (-up.re * zero.im + up.im * zero.re) * s1
            + (zero.re * down.im - zero.im * down.re) * s2);
    let sy = pref * (c1.re * s1 + c1.im * k1 - c2.re * s2 + c2.im * k2);
    let sz = HBAR * (up.norm_sqr() - down.norm_sqr());
    Ok(Magnetization { sx, sy, sz })
}

/// Sampled time series of a state and its spin expectation values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<SpinState>,
    sx: Vec<f64>,
    sy: Vec<f64>,
    sz: Vec<f64>,
    norm: Vec<f64>,
}

impl Trajectory {
    /// Builds a trajectory from columns, checking equal lengths and increasing times.
    pub fn from_columns(
        times: Vec<f64>,
        states: Vec<SpinState>,
        sx: Vec<f64>,
        sy: Vec<f64>,
        sz: Vec<f64>,
        norm: Vec<f64>,
    ) -> Result<Self> {
        let n = times.len();
        for len in [states.len(), sx.len(), sy.len(), sz.len(), norm.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "times must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            times,
            states,
            sx,
            sy,
            sz,
            norm,
        })
    }

    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            states: Vec::with_capacity(n),
            sx: Vec::with_capacity(n),
            sy: Vec::with_capacity(n),
            sz: Vec::with_capacity(n),
            norm: Vec::with_capacity(n),
        }
    }

    pub(crate) fn push(&mut self, t: f64, state: SpinState, m: Magnetization) {
        debug_assert!(self.times.last().is_none_or(|&last| t > last));
        self.norm.push(state.norm_sqr());
        self.times.push(t);
        self.states.push(state);
        self.sx.push(m.sx);
        self.sy.push(m.sy);
        self.sz.push(m.sz);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[SpinState] {
        &self.states
    }

    pub fn sx(&self) -> &[f64] {
        &self.sx
    }

    pub fn sy(&self) -> &[f64] {
        &self.sy
    }

    pub fn sz(&self) -> &[f64] {
        &self.sz
    }

    /// `sum_j |phi_j|^2` per row.
    pub fn norm(&self) -> &[f64] {
        &self.norm
    }

    pub fn spin(&self) -> Option<HalfIntegerSpin> {
        self.states.first().map(SpinState::spin)
    }
}

/// Samples the exact evolution on `n_samples` uniformly spaced times in `[0, t_end]`.
pub fn sample_exact(
    psi0: &SpinState,
    model: &DiagonalModel,
    t_end: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    check_spin(psi0, model)?;
    if n_samples < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    let mats = spin_matrices(model.spin);
    let step = t_end / (n_samples - 1) as f64;
    let mut traj = Trajectory::with_capacity(n_samples);
    for i in 0..n_samples {
        let t = if i + 1 == n_samples {
            t_end
        } else {
            i as f64 * step
        };
        let state = evolve_exact(psi0, model, t);
        let m = Magnetization::of(&mats, &state)?;
        traj.push(t, state, m);
    }
    Ok(traj)
}

fn check_spin(psi0: &SpinState, model: &DiagonalModel) -> Result<()> {
    if psi0.spin() != model.spin {
        return Err(Error::DimensionMismatch {
            expected: model.spin.dimension(),
            found: psi0.spin().dimension(),
        });
    }
    Ok(())
}
