//! The quantized function algebra of the torus: finite linear combinations of
//! the unitary generators s(ξ), ξ ∈ Z^{2n}, multiplied through the structure
//! phase
//!
//!   s(ξ) s(η) = (−1)^{ε ω(ξ,η)} e^{−πi (M/N) ω(ξ,η)} s(ξ+η),   ε = MN mod 2.
//!
//! Both factors combine into a single root of unity exp(iπ·(εN−M)ω(ξ,η)/N),
//! so products are computed with one integer exponent reduced mod 2N and one
//! trig call per pair of terms. The induced commutation rule is
//! s(ξ)s(η) = e^{2πi(M/N)ω(η,ξ)} s(η)s(ξ).

use crate::lattice::{LatticeError, LatticePoint};
use crate::planck::PlanckData;
use crate::symplectic::{SpElement, SymplecticError};
use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("elements live over different quantization contexts")]
    ContextMismatch,
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Symplectic(#[from] SymplecticError),
}

/// Integer k with s(ξ)s(η) = exp(iπ·k/N)·s(ξ+η), before reduction mod 2N.
pub fn struct_exponent(
    planck: &PlanckData,
    xi: &LatticePoint,
    eta: &LatticePoint,
) -> Result<i128, LatticeError> {
    Ok(planck.struct_multiplier() * xi.omega(eta)? as i128)
}

/// The structure phase c(ξ, η) itself.
pub fn struct_phase(
    planck: &PlanckData,
    xi: &LatticePoint,
    eta: &LatticePoint,
) -> Result<Complex64, LatticeError> {
    Ok(planck.phase(struct_exponent(planck, xi, eta)?))
}

/// Phase z with s(ξ)s(η) = z·s(η)s(ξ), namely exp(2πi(M/N)ω(η,ξ)).
pub fn commutation_phase(
    planck: &PlanckData,
    xi: &LatticePoint,
    eta: &LatticePoint,
) -> Result<Complex64, LatticeError> {
    Ok(planck.phase(-2 * planck.numer() as i128 * xi.omega(eta)? as i128))
}

/// A finite sum Σ c_ξ s(ξ) over one quantization context.
///
/// Terms are kept in a sorted map so iteration order, and hence every
/// serialized artifact, is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    planck: PlanckData,
    terms: BTreeMap<LatticePoint, Complex64>,
}

impl TorusElement {
    pub fn zero(planck: PlanckData) -> Self {
        TorusElement { planck, terms: BTreeMap::new() }
    }

    pub fn one(planck: PlanckData) -> Self {
        let n = planck.n();
        Self::generator(planck, LatticePoint::zero(n))
    }

    /// The single generator s(ξ) with unit coefficient.
    pub fn generator(planck: PlanckData, xi: LatticePoint) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(xi, Complex64::new(1.0, 0.0));
        TorusElement { planck, terms }
    }

    pub fn from_terms(
        planck: PlanckData,
        terms: impl IntoIterator<Item = (LatticePoint, Complex64)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(planck);
        for (xi, c) in terms {
            if xi.n() != out.planck.n() {
                return Err(AlgebraError::Lattice(LatticeError::DimensionMismatch(
                    xi.n(),
                    out.planck.n(),
                )));
            }
            out.add_term(xi, c);
        }
        Ok(out)
    }

    pub fn planck(&self) -> &PlanckData {
        &self.planck
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, xi: &LatticePoint) -> Complex64 {
        self.terms.get(xi).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn add_term(&mut self, xi: LatticePoint, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(xi) {
            Entry::Vacant(slot) => {
                if c.re != 0.0 || c.im != 0.0 {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let v = slot.get_mut();
                *v += c;
                if v.re == 0.0 && v.im == 0.0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement, AlgebraError> {
        if self.planck != other.planck {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.clone();
        for (xi, c) in &other.terms {
            out.add_term(xi.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, z: Complex64) -> TorusElement {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * z)).collect();
        TorusElement { planck: self.planck.clone(), terms }
    }

    /// Product in the twisted convolution: each pair of terms contributes
    /// c_ξ d_η c(ξ,η) at ξ+η.
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement, AlgebraError> {
        if self.planck != other.planck {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = Self::zero(self.planck.clone());
        for (xi, a) in &self.terms {
            for (eta, b) in &other.terms {
                let phase = struct_phase(&self.planck, xi, eta)?;
                out.add_term(xi.add(eta)?, a * b * phase);
            }
        }
        Ok(out)
    }

    /// The adjoint: coefficients conjugate and supports negate, using
    /// s(ξ)* = s(−ξ).
    pub fn star(&self) -> TorusElement {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.neg(), v.conj()))
            .collect();
        TorusElement { planck: self.planck.clone(), terms }
    }

    /// The symplectic relabeling Σ c_ξ s(ξ) ↦ Σ c_ξ s(Bξ). Because ω is
    /// B-invariant this is an algebra automorphism.
    pub fn g_action(&self, b: &SpElement) -> Result<TorusElement, AlgebraError> {
        let mut out = Self::zero(self.planck.clone());
        for (xi, c) in &self.terms {
            out.add_term(b.apply(xi)?, *c);
        }
        Ok(out)
    }

    /// Largest coefficient difference against another element.
    pub fn max_coeff_diff(&self, other: &TorusElement) -> Result<f64, AlgebraError> {
        if self.planck != other.planck {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut worst = 0.0f64;
        for xi in self.terms.keys().chain(other.terms.keys()) {
            worst = worst.max((self.coeff(xi) - other.coeff(xi)).norm());
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &TorusElement, tol: f64) -> Result<bool, AlgebraError> {
        Ok(self.max_coeff_diff(other)? <= tol)
    }

    /// Random element with the requested support size, frequencies bounded by
    /// `bound` and coefficients uniform in the unit square.
    pub fn random(
        planck: PlanckData,
        support: usize,
        bound: i64,
        rng: &mut impl Rng,
    ) -> TorusElement {
        let n = planck.n();
        let mut out = Self::zero(planck);
        while out.terms.len() < support {
            let xi = LatticePoint::random(n, bound, rng);
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            out.terms.insert(xi, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: usize, modulus: i64, numer: i64) -> PlanckData {
        PlanckData::new(n, modulus, numer).unwrap()
    }

    fn s(planck: &PlanckData, coords: &[i64]) -> TorusElement {
        TorusElement::generator(planck.clone(), LatticePoint::from_coords(coords).unwrap())
    }

    #[test]
    fn structure_phase_pinned_values() {
        let e1 = LatticePoint::from_coords(&[1, 0]).unwrap();
        let e2 = LatticePoint::from_coords(&[0, 1]).unwrap();
        // N=2, M=1: ε=0, multiplier −1, phase exp(−iπ/2) = −i.
        let c = struct_phase(&p(1, 2, 1), &e1, &e2).unwrap();
        assert!((c - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        // N=3, M=1: ε=1, multiplier 2, phase exp(2πi/3).
        let c = struct_phase(&p(1, 3, 1), &e1, &e2).unwrap();
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((c - want).norm() < 1e-15);
    }

    #[test]
    fn product_of_basis_generators() {
        let planck = p(1, 3, 1);
        let prod = s(&planck, &[1, 0]).mul(&s(&planck, &[0, 1])).unwrap();
        assert_eq!(prod.support_len(), 1);
        let at = LatticePoint::from_coords(&[1, 1]).unwrap();
        let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((prod.coeff(&at) - want).norm() < 1e-15);
    }

    #[test]
    fn commutation_phase_matches_reordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (n, modulus, numer) in [(1usize, 2i64, 1i64), (1, 5, 2), (2, 3, 1)] {
            let planck = p(n, modulus, numer);
            for _ in 0..40 {
                let xi = LatticePoint::random(n, modulus, &mut rng);
                let eta = LatticePoint::random(n, modulus, &mut rng);
                let f = TorusElement::generator(planck.clone(), xi.clone());
                let g = TorusElement::generator(planck.clone(), eta.clone());
                let lhs = f.mul(&g).unwrap();
                let z = commutation_phase(&planck, &xi, &eta).unwrap();
                let rhs = g.mul(&f).unwrap().scale(z);
                assert!(lhs.approx_eq(&rhs, 1e-13).unwrap());
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (n, modulus, numer) in [(1usize, 4i64, 3i64), (2, 5, 2)] {
            let planck = p(n, modulus, numer);
            for _ in 0..10 {
                let f = TorusElement::random(planck.clone(), 3, 6, &mut rng);
                let g = TorusElement::random(planck.clone(), 3, 6, &mut rng);
                let h = TorusElement::random(planck.clone(), 3, 6, &mut rng);
                let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
                let rhs = f.mul(&g.mul(&h).unwrap()).unwrap();
                assert!(lhs.approx_eq(&rhs, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn star_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let planck = p(1, 7, 3);
        for _ in 0..20 {
            let f = TorusElement::random(planck.clone(), 4, 8, &mut rng);
            let g = TorusElement::random(planck.clone(), 4, 8, &mut rng);
            let lhs = f.mul(&g).unwrap().star();
            let rhs = g.star().mul(&f.star()).unwrap();
            assert!(lhs.approx_eq(&rhs, 1e-12).unwrap());
        }
    }

    #[test]
    fn generators_are_unitary() {
        let planck = p(2, 3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let xi = LatticePoint::random(2, 9, &mut rng);
            let f = TorusElement::generator(planck.clone(), xi);
            let prod = f.mul(&f.star()).unwrap();
            assert!(prod.approx_eq(&TorusElement::one(planck.clone()), 1e-14).unwrap());
        }
    }

    #[test]
    fn symplectic_relabeling_is_an_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for (n, modulus, numer) in [(1usize, 5i64, 2i64), (2, 3, 1)] {
            let planck = p(n, modulus, numer);
            for _ in 0..15 {
                let b = crate::symplectic::random_word(n, 4, &mut rng).to_matrix();
                let f = TorusElement::random(planck.clone(), 3, 5, &mut rng);
                let g = TorusElement::random(planck.clone(), 3, 5, &mut rng);
                let lhs = f.mul(&g).unwrap().g_action(&b).unwrap();
                let rhs = f.g_action(&b).unwrap().mul(&g.g_action(&b).unwrap()).unwrap();
                assert!(lhs.approx_eq(&rhs, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn context_mismatch_is_reported() {
        let f = TorusElement::one(p(1, 3, 1));
        let g = TorusElement::one(p(1, 3, 2));
        assert!(matches!(f.mul(&g), Err(AlgebraError::ContextMismatch)));
    }

    #[test]
    fn cancelling_terms_leave_the_support() {
        let planck = p(1, 3, 1);
        let f = s(&planck, &[1, 2]);
        let sum = f.add(&f.scale(Complex64::new(-1.0, 0.0))).unwrap();
        assert_eq!(sum.support_len(), 0);
    }
}
