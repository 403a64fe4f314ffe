//! Exact evaluation of the roots of unity used everywhere else in the crate.
//!
//! Every phase produced by the torus algebra and the Schrödinger model is of
//! the form exp(iπ·k/N) for an integer k. Reducing k mod 2N *before* touching
//! floating point keeps arbitrarily long products of structure phases exact up
//! to a single trig call, instead of accumulating rounding from repeated
//! multiplication.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::f64::consts::PI;

/// exp(iπ·k/den) with k reduced into [0, 2·den).
///
/// The four axis values come out bit-exact so that identities like
/// π(ξ)·π(ξ)⁻¹ = I hold with zero imaginary dust on small examples.
pub fn half_turn(k: i128, den: i64) -> Complex64 {
    debug_assert!(den >= 1, "phase denominator must be positive");
    let k = k.rem_euclid(2 * den as i128) as i64;
    if k == 0 {
        Complex64::new(1.0, 0.0)
    } else if k == den {
        Complex64::new(-1.0, 0.0)
    } else if 2 * k == den {
        Complex64::new(0.0, 1.0)
    } else if 2 * k == 3 * den {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, PI * k as f64 / den as f64)
    }
}

/// exp(2πi·r) for an exact rational number of turns.
pub fn unit_circle(r: Ratio<i64>) -> Complex64 {
    let r = fract(r);
    half_turn(2 * *r.numer() as i128, *r.denom())
}

/// Fractional part r − ⌊r⌋, always in [0, 1).
pub fn fract(r: Ratio<i64>) -> Ratio<i64> {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Ratio::from_integer(1));
    f
}

/// True when r is an integer (a full number of turns).
pub fn is_whole(r: Ratio<i64>) -> bool {
    fract(r).is_zero()
}
