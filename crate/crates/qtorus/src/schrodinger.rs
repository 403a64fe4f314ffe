//! The standard finite-dimensional model: each algebra generator s(ξ) acts on
//! functions on (Z/N)^n as a generalized permutation operator.
//!
//! With ξ = (m, n), the operator has a single nonzero per row,
//!
//!   entry[row x, col (x+m) mod N] = χ(ξ) · exp(iπ·k(x)/N),
//!   k(x) = (εN−M)⟨m,n⟩ − 2M⟨x,n⟩,
//!
//! where χ is the context twist. The exponent is reduced mod 2N as an
//! integer, so matrix entries are exact roots of unity regardless of how
//! large the frequency ξ is. This convention satisfies both
//! π(ξ)π(η) = c(ξ,η)π(ξ+η) against the algebra's structure phase and the
//! commutation rule π(ξ)π(η) = e^{2πi(M/N)ω(η,ξ)}π(η)π(ξ).
//!
//! Basis indexing on (Z/N)^n is mixed-radix row-major with the last
//! coordinate fastest: index(x) = Σ_k x_k · N^{n−1−k}.

use crate::algebra::TorusElement;
use crate::lattice::{Character, LatticeError, LatticePoint};
use crate::numerics::{CMatrix, CVector};
use crate::phase;
use crate::planck::PlanckData;
use crate::symplectic::SpElement;
use ndarray::Array2;
use num_complex::Complex64;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchrodingerError {
    #[error("twist character has dimension {twist} but the context needs {expected}")]
    TwistDimension { twist: usize, expected: usize },
    #[error("operator for frequency N·e_{basis_index} is not scalar: residual {residual:.3e}")]
    NotScalar { basis_index: usize, residual: f64 },
    #[error("element and context use different quantization data")]
    ContextMismatch,
    #[error("state vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
}

/// Planck data plus a character twisting the representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RepContext {
    planck: PlanckData,
    twist: Character,
}

impl RepContext {
    /// The untwisted representation.
    pub fn canonical(planck: PlanckData) -> Self {
        let twist = Character::trivial(planck.n());
        RepContext { planck, twist }
    }

    pub fn twisted(planck: PlanckData, twist: Character) -> Result<Self, SchrodingerError> {
        if twist.n() != planck.n() {
            return Err(SchrodingerError::TwistDimension {
                twist: twist.n(),
                expected: planck.n(),
            });
        }
        Ok(RepContext { planck, twist })
    }

    pub fn planck(&self) -> &PlanckData {
        &self.planck
    }

    pub fn twist(&self) -> &Character {
        &self.twist
    }

    pub fn dim(&self) -> usize {
        self.planck.dim()
    }

    /// The context whose twist is the B-pullback of this one's. Conjugating
    /// the representation by an intertwiner for B lands in this context.
    pub fn conjugated(&self, b: &SpElement) -> Result<RepContext, SchrodingerError> {
        let twist = crate::lattice::char_action(b, &self.twist)?;
        Ok(RepContext { planck: self.planck.clone(), twist })
    }
}

/// Index of a point of (Z/N)^n, last coordinate fastest.
pub fn coords_to_index(coords: &[i64], modulus: i64) -> usize {
    let mut idx = 0usize;
    for &c in coords {
        idx = idx * modulus as usize + c.rem_euclid(modulus) as usize;
    }
    idx
}

/// Inverse of `coords_to_index`, returning entries in [0, N).
pub fn index_to_coords(mut index: usize, n: usize, modulus: i64) -> Vec<i64> {
    let mut coords = vec![0i64; n];
    for k in (0..n).rev() {
        coords[k] = (index % modulus as usize) as i64;
        index /= modulus as usize;
    }
    coords
}

/// A matrix with exactly one nonzero entry per row and per column: row r
/// carries `val[r]` at column `col[r]`. Products, adjoints, and conjugations
/// of these cost O(dim) or O(dim²) instead of dense O(dim³).
#[derive(Debug, Clone, PartialEq)]
pub struct PiOp {
    col: Vec<usize>,
    val: Vec<Complex64>,
}

impl PiOp {
    pub fn new(col: Vec<usize>, val: Vec<Complex64>) -> Self {
        debug_assert_eq!(col.len(), val.len());
        debug_assert!(
            {
                let mut seen = vec![false; col.len()];
                col.iter().all(|&c| {
                    let fresh = !seen[c];
                    seen[c] = true;
                    fresh
                })
            },
            "column map must be a permutation"
        );
        PiOp { col, val }
    }

    pub fn identity(dim: usize) -> Self {
        PiOp {
            col: (0..dim).collect(),
            val: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.col.len()
    }

    pub fn to_matrix(&self) -> CMatrix {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, dim));
        for r in 0..dim {
            out[[r, self.col[r]]] = self.val[r];
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> PiOp {
        PiOp {
            col: self.col.clone(),
            val: self.val.iter().map(|v| v * z).collect(),
        }
    }

    pub fn mul(&self, other: &PiOp) -> PiOp {
        let dim = self.dim();
        let mut col = vec![0usize; dim];
        let mut val = vec![Complex64::new(0.0, 0.0); dim];
        for r in 0..dim {
            let mid = self.col[r];
            col[r] = other.col[mid];
            val[r] = self.val[r] * other.val[mid];
        }
        PiOp { col, val }
    }

    pub fn adjoint(&self) -> PiOp {
        let dim = self.dim();
        let mut col = vec![0usize; dim];
        let mut val = vec![Complex64::new(0.0, 0.0); dim];
        for r in 0..dim {
            col[self.col[r]] = r;
            val[self.col[r]] = self.val[r].conj();
        }
        PiOp { col, val }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim())
            .filter(|&r| self.col[r] == r)
            .map(|r| self.val[r])
            .sum()
    }

    /// Frobenius distance between the dense forms, using the sparsity.
    pub fn fro_diff(&self, other: &PiOp) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.dim() {
            if self.col[r] == other.col[r] {
                acc += (self.val[r] - other.val[r]).norm_sqr();
            } else {
                acc += self.val[r].norm_sqr() + other.val[r].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// self · A · other†, computed entrywise in O(dim²).
    pub fn sandwich(&self, a: &CMatrix, other: &PiOp) -> CMatrix {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                out[[r, c]] = self.val[r] * a[[self.col[r], other.col[c]]] * other.val[c].conj();
            }
        }
        out
    }

    /// self · A · self†; for unitary generalized permutations this is the
    /// conjugation action.
    pub fn conj_by(&self, a: &CMatrix) -> CMatrix {
        self.sandwich(a, self)
    }

    pub fn apply_vec(&self, v: &CVector) -> CVector {
        let dim = self.dim();
        let mut out = CVector::zeros(dim);
        for r in 0..dim {
            out[r] = self.val[r] * v[self.col[r]];
        }
        out
    }

    /// Accumulates z·self into a dense matrix.
    pub fn add_into(&self, target: &mut CMatrix, z: Complex64) {
        for r in 0..self.dim() {
            target[[r, self.col[r]]] += z * self.val[r];
        }
    }
}

/// The operator attached to the generator s(ξ).
pub fn pi_basis(ctx: &RepContext, xi: &LatticePoint) -> Result<PiOp, SchrodingerError> {
    let planck = ctx.planck();
    let n = planck.n();
    if xi.n() != n {
        return Err(SchrodingerError::Lattice(LatticeError::DimensionMismatch(
            xi.n(),
            n,
        )));
    }
    let modulus = planck.modulus();
    let dim = planck.dim();
    let twist_angle = ctx.twist().angle_of(xi)?;

    let m = xi.position();
    let freq = xi.momentum();
    let mn_pairing = xi.self_pairing();
    let alpha_exp = planck.struct_multiplier() * mn_pairing;

    let mut col = vec![0usize; dim];
    let mut val = vec![Complex64::new(0.0, 0.0); dim];
    for (row, slot) in col.iter_mut().enumerate() {
        let x = index_to_coords(row, n, modulus);
        let shifted: Vec<i64> = x.iter().zip(m).map(|(a, b)| a + b).collect();
        *slot = coords_to_index(&shifted, modulus);
        let xn: i128 = x.iter().zip(freq).map(|(&a, &b)| a as i128 * b as i128).sum();
        let k = alpha_exp - 2 * planck.numer() as i128 * xn;
        let k_red = k.rem_euclid(2 * modulus as i128) as i64;
        let angle = twist_angle + Ratio::new(k_red, 2 * modulus);
        val[row] = phase::unit_circle(angle);
    }
    Ok(PiOp::new(col, val))
}

/// Σ c_ξ π(s(ξ)) as a dense operator.
pub fn weyl_quantize(ctx: &RepContext, f: &TorusElement) -> Result<CMatrix, SchrodingerError> {
    if f.planck() != ctx.planck() {
        return Err(SchrodingerError::ContextMismatch);
    }
    let mut out = Array2::zeros((ctx.dim(), ctx.dim()));
    for (xi, c) in f.terms() {
        pi_basis(ctx, xi)?.add_into(&mut out, *c);
    }
    Ok(out)
}

/// Trace of the operator attached to s(ξ). Vanishes off the sublattice NΛ*.
pub fn trace_diagnostic(ctx: &RepContext, xi: &LatticePoint) -> Result<Complex64, SchrodingerError> {
    Ok(pi_basis(ctx, xi)?.trace())
}

/// The central character: angle of the scalar π(N·e) on each basis vector e.
///
/// Angles are snapped to the nearest rational with denominator 2N², which is
/// exact because every scalar arising here is a root of unity of that order.
pub fn character_map(ctx: &RepContext) -> Result<Character, SchrodingerError> {
    let n = ctx.planck().n();
    let modulus = ctx.planck().modulus();
    let snap_den = 2 * modulus * modulus;
    let mut angles = Vec::with_capacity(2 * n);
    for (basis_index, e) in LatticePoint::basis(n).iter().enumerate() {
        let op = pi_basis(ctx, &e.scale(modulus))?;
        let dense = op.to_matrix();
        let (lambda, residual) = crate::numerics::scalar_part(&dense);
        if residual > 1e-12 {
            return Err(SchrodingerError::NotScalar { basis_index, residual });
        }
        let turns = lambda.arg() / (2.0 * std::f64::consts::PI);
        let snapped = (turns * snap_den as f64).round() as i64;
        angles.push(phase::fract(Ratio::new(snapped, snap_den)));
    }
    Ok(Character::new(angles)?)
}

/// Averages conjugation over all of [0,N)^{2n} and reports how many
/// independent non-scalar commutant directions the trials expose. A value of
/// 1 certifies that the commutant looks one-dimensional to every trial.
pub fn commutant_dim(ctx: &RepContext, trials: usize, seed: u64) -> Result<usize, SchrodingerError> {
    assert!(trials >= 1, "at least one trial is required");
    let n = ctx.planck().n();
    let modulus = ctx.planck().modulus();
    let dim = ctx.dim();
    let count = (modulus as usize).pow(2 * n as u32);

    let ops: Vec<PiOp> = (0..count)
        .map(|i| {
            let coords = index_to_coords(i, 2 * n, modulus);
            pi_basis(ctx, &LatticePoint::from_coords(&coords).expect("coords have length 2n"))
        })
        .collect::<Result<_, _>>()?;

    let mut nonscalar: Vec<CMatrix> = Vec::new();
    for t in 0..trials {
        let a = crate::numerics::seeded_random_operator(dim, seed.wrapping_add(t as u64));
        let mut avg: CMatrix = Array2::zeros((dim, dim));
        for op in &ops {
            avg += &op.conj_by(&a);
        }
        avg.mapv_inplace(|z| z / count as f64);
        let (lambda, residual) = crate::numerics::scalar_part(&avg);
        if residual > 1e-10 * crate::numerics::fro_norm(&a) {
            let mut traceless = avg;
            for i in 0..dim {
                traceless[[i, i]] -= lambda;
            }
            nonscalar.push(traceless);
        }
    }
    if nonscalar.is_empty() {
        return Ok(1);
    }
    // Gram rank of the traceless parts counts independent extra directions.
    let k = nonscalar.len();
    let mut gram = Array2::zeros((k, k));
    for i in 0..k {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, y) in nonscalar[i].iter().zip(nonscalar[j].iter()) {
                acc += x.conj() * y;
            }
            gram[[i, j]] = acc;
        }
    }
    Ok(1 + gram_rank(&gram))
}

fn gram_rank(g: &CMatrix) -> usize {
    let mut a = g.clone();
    let k = a.nrows();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut rank = 0;
    for col in 0..k {
        let Some((pivot, pmax)) = (rank..k)
            .map(|r| (r, a[[r, col]].norm()))
            .max_by(|(_, x), (_, y)| x.total_cmp(y))
        else {
            break;
        };
        if pmax < 1e-8 * scale {
            continue;
        }
        for j in 0..k {
            a.swap([pivot, j], [rank, j]);
        }
        let inv = Complex64::new(1.0, 0.0) / a[[rank, col]];
        for r in rank + 1..k {
            let f = a[[r, col]] * inv;
            for j in 0..k {
                let v = a[[rank, j]];
                a[[r, j]] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// ⟨f, g⟩ = N^{−n} Σ_x f(x)·conj(g(x)), the normalized inner product making
/// the constant function a unit vector.
pub fn inner_product(f: &CVector, g: &CVector) -> Result<Complex64, SchrodingerError> {
    if f.len() != g.len() {
        return Err(SchrodingerError::LengthMismatch(f.len(), g.len()));
    }
    let acc: Complex64 = f.iter().zip(g.iter()).map(|(a, b)| a * b.conj()).sum();
    Ok(acc / f.len() as f64)
}
