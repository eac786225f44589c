//! Dynamics with a transverse field, `H = -bz S_z - k S_z^2 - bx S_x`.
//!
//! The Schrödinger equation is integrated with fixed-step classical RK4. Norm
//! drift is reported in the trajectory and never corrected. Near an avoided
//! level crossing `<S_z>` oscillates slowly between two wells; the helpers here
//! extract the tunneling time and the quasi-revival time from such a run and
//! compare them with first-order perturbation theory.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_evolution::{DiagonalModel, Magnetization, Trajectory};
use crate::spin_algebra::{
    hermitian_expectation, spin_matrices, sx_element, CMatrix, HalfIntegerSpin, SpinState, C64,
    HBAR,
};

/// Largest tolerated `| |psi|^2 - |psi0|^2 |` during integration.
pub const MAX_NORM_DRIFT: f64 = 1e-6;

/// Below this value of `|dE| t / hbar` the resonant limit of the first-order terms is used.
pub const RESONANCE_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FullModel {
    pub spin: HalfIntegerSpin,
    pub bz: f64,
    pub k: f64,
    /// Transverse perturbation strength multiplying `S_x`.
    pub bx: f64,
}

impl FullModel {
    pub fn new(spin: HalfIntegerSpin, bz: f64, k: f64, bx: f64) -> Self {
        Self { spin, bz, k, bx }
    }

    pub fn diagonal(&self) -> DiagonalModel {
        DiagonalModel::new(self.spin, self.bz, self.k)
    }

    pub fn hamiltonian(&self) -> CMatrix {
        let m = spin_matrices(self.spin);
        let (x, z) = (m.x.matrix(), m.z.matrix());
        let re = |v: f64| C64::new(v, 0.0);
        z * re(-self.bz) - (z * z) * re(self.k) - x * re(self.bx)
    }

    /// `|bx (S_x)_{1,2}|`, the coupling of the two topmost levels.
    fn coupling(&self) -> f64 {
        (self.bx * sx_element(self.spin, 1)).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Store every n-th step (the first and last steps are always stored).
    pub record_every: usize,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_end: f64, record_every: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            t_end,
            record_every,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end must be non-negative, got {}", self.t_end));
        }
        if self.t_end > 0.0 && self.dt > self.t_end {
            return bad(format!("dt = {} exceeds t_end = {}", self.dt, self.t_end));
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        Ok(())
    }

    /// Number of steps; the step is shrunk slightly so that the last one lands on `t_end`.
    fn steps(&self) -> (usize, f64) {
        if self.t_end == 0.0 {
            return (0, self.dt);
        }
        let n = (self.t_end / self.dt - 1e-9).ceil().max(1.0) as usize;
        (n, self.t_end / n as f64)
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e-2,
            t_end: 1e4,
            record_every: 10,
        }
    }
}

/// Integrates `d psi/dt = -(i/hbar) H psi` with classical RK4.
pub fn integrate(
    psi0: &SpinState,
    model: &FullModel,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if psi0.spin() != model.spin {
        return Err(Error::DimensionMismatch {
            expected: model.spin.dimension(),
            found: psi0.spin().dimension(),
        });
    }
    let (steps, h) = cfg.steps();
    let dim = model.spin.dimension();
    let mats = spin_matrices(model.spin);
    let gen = model.hamiltonian() * C64::new(0.0, -1.0 / HBAR);

    let mut traj = Trajectory::with_capacity(steps / cfg.record_every + 2);
    let record = |traj: &mut Trajectory, t: f64, psi: &DVector<C64>| -> Result<()> {
        let state = SpinState::from_raw(model.spin, psi.as_slice().to_vec());
        let m = Magnetization::of(&mats, &state)?;
        traj.push(t, state, m);
        Ok(())
    };

    let mut psi = psi0.to_vector();
    let norm0 = psi.norm_squared();
    record(&mut traj, 0.0, &psi)?;

    let zero = DVector::from_element(dim, C64::new(0.0, 0.0));
    let (mut k1, mut k2, mut k3, mut k4) = (zero.clone(), zero.clone(), zero.clone(), zero.clone());
    let mut tmp = zero;
    let one = C64::one();
    let half = C64::new(h / 2.0, 0.0);
    let full = C64::new(h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let third = C64::new(h / 3.0, 0.0);

    for step in 1..=steps {
        gen.mul_to(&psi, &mut k1);
        tmp.copy_from(&psi);
        tmp.axpy(half, &k1, one);
        gen.mul_to(&tmp, &mut k2);
        tmp.copy_from(&psi);
        tmp.axpy(half, &k2, one);
        gen.mul_to(&tmp, &mut k3);
        tmp.copy_from(&psi);
        tmp.axpy(full, &k3, one);
        gen.mul_to(&tmp, &mut k4);

        psi.axpy(sixth, &k1, one);
        psi.axpy(third, &k2, one);
        psi.axpy(third, &k3, one);
        psi.axpy(sixth, &k4, one);

        let t = if step == steps {
            cfg.t_end
        } else {
            step as f64 * h
        };
        let drift = (psi.norm_squared() - norm0).abs();
        if drift > MAX_NORM_DRIFT || !drift.is_finite() {
            return Err(Error::NormDrift { time: t, drift });
        }
        if step % cfg.record_every == 0 || step == steps {
            record(&mut traj, t, &psi)?;
        }
    }
    Ok(traj)
}

/// `<psi|H|psi>` for the full model.
pub fn energy(model: &FullModel, psi: &SpinState) -> Result<f64> {
    hermitian_expectation(&model.hamiltonian(), psi.amplitudes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Extremum {
    Min,
    Max,
}

/// Interior extrema of `values`, refined by a parabola through the three
/// samples around each discrete extremum. On plateaus the earliest sample wins.
fn extrema(times: &[f64], values: &[f64], kind: Extremum) -> Vec<(f64, f64)> {
    let better = |a: f64, b: f64| match kind {
        Extremum::Min => a < b,
        Extremum::Max => a > b,
    };
    (1..values.len().saturating_sub(1))
        .filter(|&i| better(values[i], values[i - 1]) && !better(values[i + 1], values[i]))
        .map(|i| {
            parabola_vertex(
                [times[i - 1], times[i], times[i + 1]],
                [values[i - 1], values[i], values[i + 1]],
            )
        })
        .collect()
}

fn parabola_vertex(t: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let d01 = (y[1] - y[0]) / (t[1] - t[0]);
    let d12 = (y[2] - y[1]) / (t[2] - t[1]);
    let curvature = (d12 - d01) / (t[2] - t[0]);
    if curvature == 0.0 || !curvature.is_finite() {
        return (t[1], y[1]);
    }
    // p(x) = y0 + d01 (x - t0) + curvature (x - t0)(x - t1)
    let x = ((t[0] + t[1]) - d01 / curvature) / 2.0;
    let x = x.clamp(t[0], t[2]);
    let y = y[0] + d01 * (x - t[0]) + curvature * (x - t[0]) * (x - t[1]);
    (x, y)
}

/// Time from `t = 0` to the first extremum of `<S_z>` opposite to the starting one.
pub fn detect_mqt_time(traj: &Trajectory) -> Result<f64> {
    let (times, sz) = (traj.times(), traj.sz());
    let Some(&start) = sz.first() else {
        return Err(Error::MissingFeature("extremum of <S_z>"));
    };
    let rising = sz
        .iter()
        .find(|&&v| v != start)
        .map(|&v| v > start)
        .ok_or(Error::MissingFeature("extremum of <S_z>"))?;
    let kind = if rising { Extremum::Max } else { Extremum::Min };
    extrema(times, sz, kind)
        .first()
        .map(|&(t, _)| t - times[0])
        .ok_or(Error::MissingFeature(if rising {
            "maximum of <S_z>"
        } else {
            "minimum of <S_z>"
        }))
}

fn first_two_minima(traj: &Trajectory) -> Result<[(f64, f64); 2]> {
    match extrema(traj.times(), traj.sz(), Extremum::Min)[..] {
        [a, b, ..] => Ok([a, b]),
        _ => Err(Error::MissingFeature("second minimum of <S_z>")),
    }
}

/// Time between the first two interior minima of `<S_z>`.
pub fn detect_q_evrt(traj: &Trajectory) -> Result<f64> {
    let [a, b] = first_two_minima(traj)?;
    Ok(b.0 - a.0)
}

/// `<S_z>` at the first minimum minus `<S_z>` at the second.
pub fn minima_gap(traj: &Trajectory) -> Result<f64> {
    let [a, b] = first_two_minima(traj)?;
    Ok(a.1 - b.1)
}

/// First-order probability of reaching neighbour level `to` from level `from`
/// (basis indices, `|from - to| = 1`), starting with all weight on `from`.
pub fn transition_probability(model: &FullModel, from: usize, to: usize, t: f64) -> f64 {
    assert_eq!(from.abs_diff(to), 1, "levels must be neighbours");
    let e = model.diagonal().energies();
    let de = e[from] - e[to];
    let coupling = model.bx * sx_element(model.spin, from.min(to) + 1);
    if (de * t / HBAR).abs() < RESONANCE_THRESHOLD {
        return (coupling * t / HBAR).powi(2);
    }
    let sinc = (de * t / (2.0 * HBAR)).sin() / (de / 2.0);
    coupling.powi(2) * sinc.powi(2)
}

/// Golden-rule population of `|m = s>` after starting in `|m = s - 1>`.
pub fn golden_rule_probability(model: &FullModel, t: f64) -> f64 {
    transition_probability(model, 1, 0, t)
}

/// First-order correction for one level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FirstOrderCoefficient {
    pub value: C64,
    /// Some neighbour is degenerate with this level and its term is linear in `t`.
    pub resonant: bool,
}

/// First-order interaction-picture corrections `sigma^(1)` for every level.
///
/// Amplitudes are `phi_n(t) = sigma_n(t) exp(-i E_n t / hbar)`; each level is fed
/// by its two neighbours through `-bx S_x`.
pub fn first_order_sigma(
    model: &FullModel,
    psi0: &SpinState,
    t: f64,
) -> Result<Vec<FirstOrderCoefficient>> {
    if psi0.spin() != model.spin {
        return Err(Error::DimensionMismatch {
            expected: model.spin.dimension(),
            found: psi0.spin().dimension(),
        });
    }
    let e = model.diagonal().energies();
    let sigma0 = psi0.amplitudes();
    let dim = model.spin.dimension();
    let mut out = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut value = C64::new(0.0, 0.0);
        let mut resonant = false;
        for m in [n.wrapping_sub(1), n + 1] {
            if m >= dim {
                continue;
            }
            // <n| -bx S_x |m> is real
            let v = -model.bx * sx_element(model.spin, n.min(m) + 1);
            let w = (e[n] - e[m]) / HBAR;
            let integral = if (w * t).abs() < RESONANCE_THRESHOLD {
                resonant = true;
                C64::new(t, 0.0)
            } else {
                (C64::from_polar(1.0, w * t) - 1.0) / C64::new(0.0, w)
            };
            value += C64::new(0.0, -v / HBAR) * integral * sigma0[m];
        }
        out.push(FirstOrderCoefficient { value, resonant });
    }
    Ok(out)
}

/// Time up to which the first-order golden-rule probability stays below one.
pub fn validity_bound(model: &FullModel) -> Result<f64> {
    if model.bx == 0.0 {
        return Err(Error::ZeroTransverseField);
    }
    Ok(HBAR / model.coupling())
}

/// Predicted tunneling time `pi hbar / (2 |bx (S_x)_{1,2}|)`.
///
/// Meaningful at `bz / k = N` integer with `N <= 2s`; other ratios only log a warning.
pub fn predicted_tmqt(model: &FullModel) -> Result<f64> {
    if model.bx == 0.0 {
        return Err(Error::ZeroTransverseField);
    }
    let n = model.bz / model.k;
    let integer = (n - n.round()).abs() < 1e-9;
    if !(integer && n.round() <= f64::from(model.spin.twice())) {
        log::warn!(
            "bz/k = {n} is not an integer <= 2s = {}; no avoided crossing is expected",
            model.spin.twice()
        );
    }
    Ok(PI * HBAR / (2.0 * model.coupling()))
}

/// Times extracted from one tunneling trajectory next to their predictions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TunnelingReport {
    pub t_mqt_measured: f64,
    pub t_mqt_predicted: f64,
    pub t_q_evrt: f64,
    pub minima_gap: f64,
    pub validity_t: f64,
    pub ratio_q_evrt_over_mqt: f64,
    pub ratio_mqt_over_validity: f64,
}

pub fn analyze_tunneling(traj: &Trajectory, model: &FullModel) -> Result<TunnelingReport> {
    let t_mqt_predicted = predicted_tmqt(model)?;
    let validity_t = validity_bound(model)?;
    let t_mqt_measured = detect_mqt_time(traj)?;
    let t_q_evrt = detect_q_evrt(traj)?;
    let minima_gap = minima_gap(traj)?;
    Ok(TunnelingReport {
        t_mqt_measured,
        t_mqt_predicted,
        t_q_evrt,
        minima_gap,
        validity_t,
        ratio_q_evrt_over_mqt: t_q_evrt / t_mqt_measured,
        ratio_mqt_over_validity: t_mqt_measured / validity_t,
    })
}

/// Integrates and analyzes in one go.
pub fn tunnel(
    psi0: &SpinState,
    model: &FullModel,
    cfg: &IntegratorConfig,
) -> Result<(Trajectory, TunnelingReport)> {
    if model.bx == 0.0 {
        return Err(Error::ZeroTransverseField);
    }
    let traj = integrate(psi0, model, cfg)?;
    let report = analyze_tunneling(&traj, model)?;
    Ok((traj, report))
}
