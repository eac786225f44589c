//! Closed-form revival times for rational field-to-anisotropy ratios.
//!
//! All values are coefficients `c` of `T = c * pi * hbar / K`. They are used as
//! checks on the generic gcd pipeline; the pipeline never consults them.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{RatioClass, Rational};
use crate::spin_algebra::HalfIntegerSpin;

/// Expectation-value revival for integer `N`.
///
/// `2` (i.e. `2 pi hbar / K`) for integer s with even N, or half-integer s
/// with odd N; `1` otherwise.
pub fn evrt_integer(spin: HalfIntegerSpin, n: &BigInt) -> Rational {
    let even = n.is_even();
    let long = if spin.is_integer() { even } else { !even };
    Rational::from_integer(if long { 2 } else { 1 })
}

/// The two candidates `{b, 2b}` for a reduced non-integer ratio `a/b`.
pub fn evrt_non_integer_candidates(b: &BigInt) -> [Rational; 2] {
    [
        Rational::from_integer(b.clone()),
        Rational::from_integer(b * BigInt::from(2)),
    ]
}

/// Admissible wave-function revival coefficients for the given ratio class.
///
/// Integer s reproduces the expectation-value table. Half-integer s gives `8`
/// for integer N, `4` for `N = (2g - 1)/2`, and otherwise `8b` (b > 2) or
/// `4b` (b > 3). Irrational ratios yield an empty list.
pub fn qrt_candidates(spin: HalfIntegerSpin, ratio: &RatioClass) -> Vec<Rational> {
    match ratio {
        RatioClass::DeclaredIrrational => Vec::new(),
        RatioClass::Integer(n) => {
            if spin.is_integer() {
                vec![evrt_integer(spin, n)]
            } else {
                vec![Rational::from_integer(8)]
            }
        }
        RatioClass::NonIntegerRational { b, .. } => {
            if spin.is_integer() {
                evrt_non_integer_candidates(b).to_vec()
            } else if *b == BigInt::from(2) {
                vec![Rational::from_integer(4)]
            } else {
                let mut out = Vec::new();
                if *b > BigInt::from(2) {
                    out.push(Rational::from_integer(b * BigInt::from(8)));
                }
                if *b > BigInt::from(3) {
                    out.push(Rational::from_integer(b * BigInt::from(4)));
                }
                out
            }
        }
    }
}

/// Admissible ratios `QRT / EVRT`.
pub fn ratio_candidates(spin: HalfIntegerSpin) -> Vec<Rational> {
    if spin.is_integer() {
        vec![Rational::one()]
    } else {
        [1, 2, 4, 8]
            .into_iter()
            .map(Rational::from_integer)
            .collect()
    }
}
