//! Lattice of Fourier modes Z^n ⊕ Z^n, the integral symplectic form ω, and
//! unitary characters of the lattice.
//!
//! A point ξ = (m, n) pairs a position frequency m with a momentum frequency
//! n. The form is ω(ξ, η) = ⟨m_ξ, n_η⟩ − ⟨m_η, n_ξ⟩, so the basis vectors
//! satisfy ω(e_i, e′_j) = δ_ij. Characters carry one exact rational angle per
//! basis vector; all character arithmetic stays in Q/Z until the final
//! evaluation on the unit circle.

use crate::phase;
use crate::symplectic::SpElement;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("position and momentum parts must have equal nonzero length")]
    BadShape,
    #[error("character needs 2n angles for some n ≥ 1, got {0}")]
    BadAngleCount(usize),
}

/// A lattice vector ξ = (m, n) ∈ Z^n ⊕ Z^n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    m: Vec<i64>,
    nn: Vec<i64>,
}

impl LatticePoint {
    pub fn new(m: Vec<i64>, nn: Vec<i64>) -> Result<Self, LatticeError> {
        if m.is_empty() || m.len() != nn.len() {
            return Err(LatticeError::BadShape);
        }
        Ok(LatticePoint { m, nn })
    }

    /// Builds from 2n coordinates laid out as (m, n).
    pub fn from_coords(coords: &[i64]) -> Result<Self, LatticeError> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(LatticeError::BadAngleCount(coords.len()));
        }
        let n = coords.len() / 2;
        Ok(LatticePoint {
            m: coords[..n].to_vec(),
            nn: coords[n..].to_vec(),
        })
    }

    pub fn zero(n: usize) -> Self {
        LatticePoint { m: vec![0; n], nn: vec![0; n] }
    }

    /// Position basis vector e_i.
    pub fn basis_position(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.m[i] = 1;
        p
    }

    /// Momentum basis vector e′_i.
    pub fn basis_momentum(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.nn[i] = 1;
        p
    }

    /// All 2n basis vectors, positions first.
    pub fn basis(n: usize) -> Vec<Self> {
        (0..n)
            .map(|i| Self::basis_position(n, i))
            .chain((0..n).map(|i| Self::basis_momentum(n, i)))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn position(&self) -> &[i64] {
        &self.m
    }

    pub fn momentum(&self) -> &[i64] {
        &self.nn
    }

    /// Coordinates as one slice-ordered vector (m, n) of length 2n.
    pub fn coords(&self) -> Vec<i64> {
        self.m.iter().chain(self.nn.iter()).copied().collect()
    }

    /// ⟨m, n⟩ of this point's own components.
    pub fn self_pairing(&self) -> i128 {
        self.m
            .iter()
            .zip(&self.nn)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// ω(self, other) = ⟨m_self, n_other⟩ − ⟨m_other, n_self⟩.
    pub fn omega(&self, other: &LatticePoint) -> Result<i64, LatticeError> {
        if self.n() != other.n() {
            return Err(LatticeError::DimensionMismatch(self.n(), other.n()));
        }
        let mut acc: i128 = 0;
        for i in 0..self.n() {
            acc += self.m[i] as i128 * other.nn[i] as i128;
            acc -= other.m[i] as i128 * self.nn[i] as i128;
        }
        Ok(i64::try_from(acc).expect("ω stays far below i64 range at practical sizes"))
    }

    pub fn add(&self, other: &LatticePoint) -> Result<LatticePoint, LatticeError> {
        if self.n() != other.n() {
            return Err(LatticeError::DimensionMismatch(self.n(), other.n()));
        }
        Ok(LatticePoint {
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
            nn: self.nn.iter().zip(&other.nn).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint {
            m: self.m.iter().map(|a| -a).collect(),
            nn: self.nn.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> LatticePoint {
        LatticePoint {
            m: self.m.iter().map(|a| a * k).collect(),
            nn: self.nn.iter().map(|a| a * k).collect(),
        }
    }

    /// True when every coordinate is divisible by k, i.e. ξ ∈ k·Z^{2n}.
    pub fn divisible_by(&self, k: i64) -> bool {
        self.m.iter().chain(self.nn.iter()).all(|a| a % k == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().chain(self.nn.iter()).all(|&a| a == 0)
    }

    /// Uniform sample with every coordinate in [−bound, bound].
    pub fn random(n: usize, bound: i64, rng: &mut impl Rng) -> Self {
        LatticePoint {
            m: (0..n).map(|_| rng.gen_range(-bound..=bound)).collect(),
            nn: (0..n).map(|_| rng.gen_range(-bound..=bound)).collect(),
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.m, self.nn)
    }
}

/// A unitary character of the lattice, stored as 2n exact angles in [0, 1)
/// (fractions of a full turn), positions first.
///
/// χ(ξ) = exp(2πi·Σ_k angle_k·ξ_k). Equality of characters is exact equality
/// of reduced angles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    angles: Vec<Ratio<i64>>,
}

impl Character {
    pub fn new(angles: Vec<Ratio<i64>>) -> Result<Self, LatticeError> {
        if angles.is_empty() || angles.len() % 2 != 0 {
            return Err(LatticeError::BadAngleCount(angles.len()));
        }
        Ok(Character {
            angles: angles.into_iter().map(phase::fract).collect(),
        })
    }

    pub fn trivial(n: usize) -> Self {
        Character { angles: vec![Ratio::zero(); 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.angles.len() / 2
    }

    pub fn angles(&self) -> &[Ratio<i64>] {
        &self.angles
    }

    pub fn is_trivial(&self) -> bool {
        self.angles.iter().all(Ratio::is_zero)
    }

    /// Exact angle of χ(ξ) in [0, 1).
    pub fn angle_of(&self, xi: &LatticePoint) -> Result<Ratio<i64>, LatticeError> {
        if xi.n() != self.n() {
            return Err(LatticeError::DimensionMismatch(xi.n(), self.n()));
        }
        let mut acc = Ratio::zero();
        for (a, c) in self.angles.iter().zip(xi.coords()) {
            acc = phase::fract(acc + a * Ratio::from_integer(c));
        }
        Ok(acc)
    }

    /// χ(ξ) on the unit circle.
    pub fn eval(&self, xi: &LatticePoint) -> Result<Complex64, LatticeError> {
        Ok(phase::unit_circle(self.angle_of(xi)?))
    }

    /// χ^k, the character with every angle multiplied by k (mod 1).
    pub fn power(&self, k: i64) -> Character {
        Character {
            angles: self
                .angles
                .iter()
                .map(|a| phase::fract(a * Ratio::from_integer(k)))
                .collect(),
        }
    }

    /// Pointwise product χ·ψ.
    pub fn mul(&self, other: &Character) -> Result<Character, LatticeError> {
        if self.n() != other.n() {
            return Err(LatticeError::DimensionMismatch(self.n(), other.n()));
        }
        Ok(Character {
            angles: self
                .angles
                .iter()
                .zip(&other.angles)
                .map(|(a, b)| phase::fract(a + b))
                .collect(),
        })
    }

    /// Random character with angles k/denominator, k uniform.
    pub fn random(n: usize, denominator: i64, rng: &mut impl Rng) -> Self {
        Character {
            angles: (0..2 * n)
                .map(|_| phase::fract(Ratio::new(rng.gen_range(0..denominator), denominator)))
                .collect(),
        }
    }
}

/// The pulled-back character ^Bχ with (^Bχ)(ξ) = χ(B⁻¹ξ).
///
/// This is a left action: acting by B₁B₂ equals acting by B₂ first.
pub fn char_action(b: &SpElement, chi: &Character) -> Result<Character, LatticeError> {
    if b.n() != chi.n() {
        return Err(LatticeError::DimensionMismatch(b.n(), chi.n()));
    }
    let binv = b.inverse();
    let angles = LatticePoint::basis(chi.n())
        .iter()
        .map(|e| {
            let pre = binv.apply(e).expect("dimension already checked");
            chi.angle_of(&pre).expect("dimension already checked")
        })
        .collect();
    Ok(Character { angles })
}
