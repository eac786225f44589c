//! Spin operator matrices and pure states for a single spin `s`.
//!
//! Basis vectors are ordered by descending magnetic quantum number: index `j`
//! holds the amplitude of `|m = s - j>`. All matrices are dense, in units of
//! [`HBAR`].

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reduced Planck constant in the internal arbitrary units.
pub const HBAR: f64 = 1.0;

/// Tolerance on `|<psi|psi> - 1|` accepted for a normalized state.
pub const NORM_TOLERANCE: f64 = 1e-12;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Spin quantum number stored as `2s`, so that half-integer values are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegerSpin {
    twice_s: u32,
}

impl HalfIntegerSpin {
    pub fn from_twice(twice_s: u32) -> Result<Self> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin("s must be at least 1/2".into()));
        }
        Ok(Self { twice_s })
    }

    pub fn twice(self) -> u32 {
        self.twice_s
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_s) / 2.0
    }

    pub fn dimension(self) -> usize {
        self.twice_s as usize + 1
    }

    pub fn is_integer(self) -> bool {
        self.twice_s.is_multiple_of(2)
    }

    /// `2m` for basis index `j`, i.e. `2(s - j)`.
    pub fn twice_m(self, index: usize) -> i64 {
        i64::from(self.twice_s) - 2 * index as i64
    }

    /// Magnetic quantum number `m = s - j` for basis index `j`.
    pub fn m(self, index: usize) -> f64 {
        self.twice_m(index) as f64 / 2.0
    }

    /// Label of level `j` such as `+3/2`, `0` or `-1`.
    pub fn level_label(self, index: usize) -> String {
        let tm = self.twice_m(index);
        let sign = match tm.signum() {
            1 => "+",
            -1 => "-",
            _ => "",
        };
        if tm % 2 == 0 {
            format!("{sign}{}", tm.abs() / 2)
        } else {
            format!("{sign}{}/2", tm.abs())
        }
    }
}

impl fmt::Display for HalfIntegerSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_s / 2)
        } else {
            write!(f, "{}/2", self.twice_s)
        }
    }
}

impl FromStr for HalfIntegerSpin {
    type Err = Error;

    /// Accepts `"1/2"`, `"3/2"`, `"1"`, `"2"`, ...
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpin(format!("cannot parse {s:?}; expected e.g. 1/2, 1 or 3/2"));
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num: u32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Self::from_twice(num.checked_mul(2).ok_or_else(bad)?),
                    "2" => Self::from_twice(num),
                    _ => Err(bad()),
                }
            }
            None => {
                let v: u32 = s.parse().map_err(|_| bad())?;
                Self::from_twice(v.checked_mul(2).ok_or_else(bad)?)
            }
        }
    }
}

/// Normalized pure state of a spin.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    spin: HalfIntegerSpin,
    amplitudes: Vec<C64>,
}

impl SpinState {
    /// Wraps amplitudes that are already normalized to within [`NORM_TOLERANCE`].
    pub fn new(spin: HalfIntegerSpin, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(spin, amplitudes.len())?;
        check_finite(&amplitudes)?;
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized((n2 - 1.0).abs()));
        }
        Ok(Self { spin, amplitudes })
    }

    /// States produced by numerical integration keep their norm drift so it can
    /// be reported rather than hidden.
    pub(crate) fn from_raw(spin: HalfIntegerSpin, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(spin.dimension(), amplitudes.len());
        Self { spin, amplitudes }
    }

    /// Basis state `|m = s - index>`.
    pub fn basis(spin: HalfIntegerSpin, index: usize) -> Result<Self> {
        if index >= spin.dimension() {
            return Err(Error::DimensionMismatch {
                expected: spin.dimension(),
                found: index + 1,
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); spin.dimension()];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { spin, amplitudes })
    }

    /// `|m = +s>`.
    pub fn top(spin: HalfIntegerSpin) -> Self {
        Self::basis(spin, 0).expect("index 0 is always valid")
    }

    /// `|m = -s>`.
    pub fn bottom(spin: HalfIntegerSpin) -> Self {
        Self::basis(spin, spin.dimension() - 1).expect("last index is always valid")
    }

    /// Equal real amplitudes on every level.
    pub fn uniform(spin: HalfIntegerSpin) -> Self {
        let a = 1.0 / (spin.dimension() as f64).sqrt();
        Self {
            spin,
            amplitudes: vec![C64::new(a, 0.0); spin.dimension()],
        }
    }

    /// Equal weight on `m = s` and `m = s - 1`.
    pub fn pair(spin: HalfIntegerSpin) -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![C64::new(0.0, 0.0); spin.dimension()];
        amplitudes[0] = C64::new(a, 0.0);
        amplitudes[1] = C64::new(a, 0.0);
        Self { spin, amplitudes }
    }

    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `sum_j |phi_j|^2`.
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn to_vector(&self) -> DVector<C64> {
        DVector::from_column_slice(&self.amplitudes)
    }

    /// Largest componentwise distance `|a_j - b_j|`.
    pub fn max_distance(&self, other: &SpinState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Scales `v` to unit norm.
pub fn normalize(v: &[C64], spin: HalfIntegerSpin) -> Result<SpinState> {
    check_len(spin, v.len())?;
    check_finite(v)?;
    let n = norm_sqr(v).sqrt();
    if n == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(SpinState {
        spin,
        amplitudes: v.iter().map(|a| a / n).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Hermitian spin component matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperatorMatrix {
    spin: HalfIntegerSpin,
    axis: Axis,
    entries: CMatrix,
}

impl SpinOperatorMatrix {
    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrices {
    pub x: SpinOperatorMatrix,
    pub y: SpinOperatorMatrix,
    pub z: SpinOperatorMatrix,
}

/// Off-diagonal magnitude `(hbar/2) sqrt((s+1)(a+b-1) - ab)` for 1-based `|a - b| = 1`.
fn ladder_magnitude(spin: HalfIntegerSpin, a: usize, b: usize) -> f64 {
    let s = spin.value();
    let (a, b) = (a as f64, b as f64);
    0.5 * HBAR * ((s + 1.0) * (a + b - 1.0) - a * b).sqrt()
}

/// The element `(S_x)_{i,i+1}` (1-based `i`, `1 <= i <= 2s`).
pub fn sx_element(spin: HalfIntegerSpin, i: usize) -> f64 {
    debug_assert!(i >= 1 && i <= spin.twice() as usize);
    ladder_magnitude(spin, i, i + 1)
}

pub fn spin_matrices(spin: HalfIntegerSpin) -> SpinMatrices {
    let n = spin.dimension();
    let zero = C64::new(0.0, 0.0);
    let mut x = CMatrix::from_element(n, n, zero);
    let mut y = CMatrix::from_element(n, n, zero);
    let mut z = CMatrix::from_element(n, n, zero);
    for r in 0..n {
        z[(r, r)] = C64::new(HBAR * spin.m(r), 0.0);
        if r + 1 < n {
            let v = ladder_magnitude(spin, r + 1, r + 2);
            x[(r, r + 1)] = C64::new(v, 0.0);
            x[(r + 1, r)] = C64::new(v, 0.0);
            // upper -i, lower +i, fixed by [S_x, S_y] = i hbar S_z
            y[(r, r + 1)] = C64::new(0.0, -v);
            y[(r + 1, r)] = C64::new(0.0, v);
        }
    }
    let wrap = |axis, entries| SpinOperatorMatrix {
        spin,
        axis,
        entries,
    };
    SpinMatrices {
        x: wrap(Axis::X, x),
        y: wrap(Axis::Y, y),
        z: wrap(Axis::Z, z),
    }
}

/// `<psi|M|psi>` for a spin component.
pub fn expectation(op: &SpinOperatorMatrix, psi: &SpinState) -> Result<f64> {
    if op.spin != psi.spin {
        return Err(Error::DimensionMismatch {
            expected: op.spin.dimension(),
            found: psi.spin.dimension(),
        });
    }
    hermitian_expectation(&op.entries, &psi.amplitudes)
}

/// `<v|M|v>` for an arbitrary Hermitian matrix; the imaginary part must vanish.
pub fn hermitian_expectation(m: &CMatrix, v: &[C64]) -> Result<f64> {
    if m.nrows() != v.len() || m.ncols() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: v.len(),
        });
    }
    let mut acc = C64::new(0.0, 0.0);
    for (r, vr) in v.iter().enumerate() {
        let mut row = C64::new(0.0, 0.0);
        for (c, vc) in v.iter().enumerate() {
            row += m[(r, c)] * vc;
        }
        acc += vr.conj() * row;
    }
    let scale = m.iter().map(|e| e.norm()).fold(1.0, f64::max);
    if acc.im.abs() > NORM_TOLERANCE * scale {
        return Err(Error::NonRealExpectation(acc.im));
    }
    Ok(acc.re)
}

/// `AB - BA`.
pub fn commutator(a: &SpinOperatorMatrix, b: &SpinOperatorMatrix) -> Result<CMatrix> {
    if a.spin != b.spin {
        return Err(Error::DimensionMismatch {
            expected: a.spin.dimension(),
            found: b.spin.dimension(),
        });
    }
    Ok(&a.entries * &b.entries - &b.entries * &a.entries)
}

fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

fn check_len(spin: HalfIntegerSpin, len: usize) -> Result<()> {
    if spin.dimension() != len {
        return Err(Error::DimensionMismatch {
            expected: spin.dimension(),
            found: len,
        });
    }
    Ok(())
}

fn check_finite(v: &[C64]) -> Result<()> {
    if v.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spin(twice: u32) -> HalfIntegerSpin {
        HalfIntegerSpin::from_twice(twice).unwrap()
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn parse_and_display() {
        for (text, twice) in [("1/2", 1), ("1", 2), ("3/2", 3), ("2", 4), ("4/1", 8)] {
            let s: HalfIntegerSpin = text.parse().unwrap();
            assert_eq!(s.twice(), twice);
        }
        assert_eq!(spin(3).to_string(), "3/2");
        assert_eq!(spin(4).to_string(), "2");
        assert!("0".parse::<HalfIntegerSpin>().is_err());
        assert!("3/4".parse::<HalfIntegerSpin>().is_err());
        assert!("-1/2".parse::<HalfIntegerSpin>().is_err());
        assert!("x".parse::<HalfIntegerSpin>().is_err());
    }

    #[test]
    fn spin_invariants() {
        let s = spin(3);
        assert_eq!(s.dimension(), 4);
        assert!(!s.is_integer());
        assert!(spin(2).is_integer());
        assert_eq!(s.m(0), 1.5);
        assert_eq!(s.m(3), -1.5);
        assert_eq!(s.level_label(0), "+3/2");
        assert_eq!(spin(2).level_label(1), "0");
        assert_eq!(spin(2).level_label(2), "-1");
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let m = spin_matrices(spin(1));
        let x = m.x.matrix();
        let z = m.z.matrix();
        assert_eq!(x[(0, 1)], c(0.5, 0.0));
        assert_eq!(x[(1, 0)], c(0.5, 0.0));
        assert_eq!(x[(0, 0)], c(0.0, 0.0));
        assert_eq!(z[(0, 0)], c(0.5, 0.0));
        assert_eq!(z[(1, 1)], c(-0.5, 0.0));
        let y = m.y.matrix();
        assert_eq!(y[(0, 1)], c(0.0, -0.5));
        assert_eq!(y[(1, 0)], c(0.0, 0.5));
    }

    #[test]
    fn spin_one_off_diagonal() {
        let s = spin(2);
        assert!((sx_element(s, 1) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let m = spin_matrices(s);
        assert!((m.x.matrix()[(0, 1)].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn structure_of_matrices() {
        for twice in 1..=8 {
            let m = spin_matrices(spin(twice));
            for op in [&m.x, &m.y, &m.z] {
                let e = op.matrix();
                assert!(max_abs(&(e - e.adjoint())) == 0.0);
            }
            let n = spin(twice).dimension();
            for r in 0..n {
                for col in 0..n {
                    if r.abs_diff(col) != 1 {
                        assert_eq!(m.x.matrix()[(r, col)], c(0.0, 0.0));
                        assert_eq!(m.y.matrix()[(r, col)], c(0.0, 0.0));
                    }
                    if r != col {
                        assert_eq!(m.z.matrix()[(r, col)], c(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn top_state_is_sz_eigenstate() {
        for twice in 1..=8 {
            let s = spin(twice);
            let m = spin_matrices(s);
            let v = expectation(&m.z, &SpinState::top(s)).unwrap();
            assert!((v - HBAR * s.value()).abs() < 1e-15);
        }
    }

    #[test]
    fn sx_of_equal_superposition() {
        let s = spin(1);
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let psi = SpinState::new(s, vec![c(a, 0.0), c(a, 0.0)]).unwrap();
        let v = expectation(&spin_matrices(s).x, &psi).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_mismatched_spin() {
        let m = spin_matrices(spin(2));
        let psi = SpinState::top(spin(1));
        assert!(matches!(
            expectation(&m.x, &psi),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let st = normalize(&[c(2.0, 0.0), c(0.0, 0.0)], spin(1)).unwrap();
        assert_eq!(st.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let st = normalize(&[c(1.0, 0.0); 4], spin(3)).unwrap();
        assert!(st
            .amplitudes()
            .iter()
            .all(|a| (a - c(0.5, 0.0)).norm() < 1e-15));
        assert_eq!(normalize(&[c(0.0, 0.0); 2], spin(1)), Err(Error::ZeroNorm));
        assert!(normalize(&[c(1.0, 0.0); 3], spin(1)).is_err());
        assert_eq!(
            normalize(&[c(f64::NAN, 0.0), c(1.0, 0.0)], spin(1)),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn new_requires_normalization() {
        assert!(matches!(
            SpinState::new(spin(1), vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(SpinState::basis(spin(1), 2).is_err());
    }

    #[test]
    fn commutator_examples() {
        let i = c(0.0, HBAR);
        let m = spin_matrices(spin(1));
        let xy = commutator(&m.x, &m.y).unwrap();
        assert!(max_abs(&(xy - m.z.matrix() * i)) < 1e-15);
        assert!(max_abs(&commutator(&m.z, &m.z).unwrap()) == 0.0);

        let m = spin_matrices(spin(2));
        let yz = commutator(&m.y, &m.z).unwrap();
        assert!(max_abs(&(yz - m.x.matrix() * i)) < 1e-15);

        let other = spin_matrices(spin(3));
        assert!(commutator(&m.x, &other.x).is_err());
    }

    #[test]
    fn angular_momentum_algebra() {
        let i = c(0.0, HBAR);
        for twice in 1..=8 {
            let s = spin(twice);
            let m = spin_matrices(s);
            let (x, y, z) = (m.x.matrix(), m.y.matrix(), m.z.matrix());
            assert!(max_abs(&(commutator(&m.x, &m.y).unwrap() - z * i)) < 1e-12);
            assert!(max_abs(&(commutator(&m.y, &m.z).unwrap() - x * i)) < 1e-12);
            assert!(max_abs(&(commutator(&m.z, &m.x).unwrap() - y * i)) < 1e-12);

            let casimir = x * x + y * y + z * z;
            let target = CMatrix::identity(s.dimension(), s.dimension())
                * c(HBAR * HBAR * s.value() * (s.value() + 1.0), 0.0);
            assert!(max_abs(&(casimir - target)) < 1e-12);
        }
    }

    fn arb_vector() -> impl Strategy<Value = (u32, Vec<C64>)> {
        (1u32..=8).prop_flat_map(|twice| {
            let n = twice as usize + 1;
            (
                Just(twice),
                prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
                    .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect()),
            )
        })
    }

    proptest! {
        #[test]
        fn expectation_is_bounded((twice, v) in arb_vector()) {
            let s = spin(twice);
            prop_assume!(norm_sqr(&v) > 1e-6);
            let psi = normalize(&v, s).unwrap();
            let m = spin_matrices(s);
            for op in [&m.x, &m.y, &m.z] {
                let e = expectation(op, &psi).unwrap();
                prop_assert!(e.abs() <= HBAR * s.value() + 1e-12);
            }
        }

        #[test]
        fn real_states_have_zero_sy((twice, v) in arb_vector()) {
            let s = spin(twice);
            let real: Vec<C64> = v.iter().map(|a| C64::new(a.re, 0.0)).collect();
            prop_assume!(norm_sqr(&real) > 1e-6);
            let psi = normalize(&real, s).unwrap();
            let e = expectation(&spin_matrices(s).y, &psi).unwrap();
            prop_assert!(e.abs() < 1e-15);
        }

        #[test]
        fn normalize_is_idempotent((twice, v) in arb_vector()) {
            let s = spin(twice);
            prop_assume!(norm_sqr(&v) > 1e-6);
            let once = normalize(&v, s).unwrap();
            let twice_n = normalize(once.amplitudes(), s).unwrap();
            prop_assert!(once.max_distance(&twice_n) < 1e-15);
            prop_assert!((once.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
        }
    }
}
