//! The arithmetic context shared by every object in the crate: the
//! half-dimension n, the modulus N, the numerator M of ℏ = M/N, and the parity
//! twist ε = M·N mod 2.

use crate::phase;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanckError {
    #[error("gcd(M,N) must be 1")]
    NotCoprime,
    #[error("N must be at least 1, got {0}")]
    BadModulus(i64),
    #[error("n must be at least 1")]
    BadHalfDimension,
    #[error("representation dimension N^n = {0}^{1} overflows usize")]
    DimensionOverflow(i64, usize),
}

/// Parameters (n, N, M) with gcd(M,N) = 1, plus the derived quantities
/// ε = M·N mod 2 and ℏ = M/N.
///
/// The phase space is the 2n-torus, the lattice of Fourier modes is Z^{2n},
/// and the quantized position space is (Z/NZ)^n of dimension N^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanckData {
    n: usize,
    modulus: i64,
    numer: i64,
    epsilon: i64,
}

impl PlanckData {
    pub fn new(n: usize, modulus: i64, numer: i64) -> Result<Self, PlanckError> {
        if n == 0 {
            return Err(PlanckError::BadHalfDimension);
        }
        if modulus < 1 {
            return Err(PlanckError::BadModulus(modulus));
        }
        if numer.gcd(&modulus) != 1 {
            return Err(PlanckError::NotCoprime);
        }
        let epsilon = (numer.wrapping_mul(modulus)).rem_euclid(2);
        let data = PlanckData { n, modulus, numer, epsilon };
        data.checked_dim()
            .ok_or(PlanckError::DimensionOverflow(modulus, n))?;
        Ok(data)
    }

    /// Half-dimension n of the torus.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Denominator N of ℏ; the position space is (Z/NZ)^n.
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Numerator M of ℏ.
    pub fn numer(&self) -> i64 {
        self.numer
    }

    /// ε = M·N mod 2. Zero exactly when N is even or M is even.
    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    /// ℏ = M/N as an exact rational.
    pub fn hbar(&self) -> Ratio<i64> {
        Ratio::new(self.numer, self.modulus)
    }

    /// Dimension N^n of the representation space.
    pub fn dim(&self) -> usize {
        self.checked_dim().expect("dimension checked at construction")
    }

    fn checked_dim(&self) -> Option<usize> {
        let base = usize::try_from(self.modulus).ok()?;
        base.checked_pow(u32::try_from(self.n).ok()?)
    }

    /// exp(iπ·k/N) with exact exponent reduction mod 2N.
    pub fn phase(&self, k: i128) -> Complex64 {
        phase::half_turn(k, self.modulus)
    }

    /// Exponent multiplier of the structure phase: (εN − M)·ω sits over π/N.
    pub fn struct_multiplier(&self) -> i128 {
        (self.epsilon * self.modulus - self.numer) as i128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_follows_parity_of_mn() {
        assert_eq!(PlanckData::new(1, 2, 1).unwrap().epsilon(), 0);
        assert_eq!(PlanckData::new(1, 3, 1).unwrap().epsilon(), 1);
        assert_eq!(PlanckData::new(1, 3, 2).unwrap().epsilon(), 0);
        assert_eq!(PlanckData::new(2, 5, 3).unwrap().epsilon(), 1);
    }

    #[test]
    fn coprimality_is_enforced() {
        assert_eq!(PlanckData::new(1, 4, 2), Err(PlanckError::NotCoprime));
        assert_eq!(PlanckData::new(1, 6, 3), Err(PlanckError::NotCoprime));
        assert!(PlanckData::new(1, 4, 3).is_ok());
    }

    #[test]
    fn dimension_is_modulus_to_the_n() {
        assert_eq!(PlanckData::new(1, 7, 1).unwrap().dim(), 7);
        assert_eq!(PlanckData::new(2, 5, 1).unwrap().dim(), 25);
        assert_eq!(PlanckData::new(3, 2, 1).unwrap().dim(), 8);
    }

    #[test]
    fn hbar_is_exact() {
        let p = PlanckData::new(1, 8, 3).unwrap();
        assert_eq!(p.hbar(), Ratio::new(3, 8));
    }

    #[test]
    fn negative_numerator_is_allowed() {
        let p = PlanckData::new(1, 3, -1).unwrap();
        assert_eq!(p.epsilon(), 1);
        assert_eq!(p.hbar(), Ratio::new(-1, 3));
    }
}
