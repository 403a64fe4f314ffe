//! Operators realizing the symplectic group on the representation space: the
//! projective action ρ with U_B π(ξ) U_B⁻¹ = π(Bξ).
//!
//! Two constructions are provided and cross-validated:
//!
//! * closed formulas for the three generator families,
//!     gl(A):        [ρf](x) = f(A⁻¹x)                 (a permutation),
//!     unipotent(S): diagonal exp(iπ(M−εN)⟨x,Sx⟩/N),
//!     fourier(S):   N^{−n/2}·exp(2πiM⟨x,Sy⟩/N)        (a finite transform),
//!   multiplied along a generator word;
//! * Schur averaging, Σ_ξ π(Bξ)·A·π(ξ)† over ξ ∈ [0,N)^{2n} for a seeded
//!   random A, which converges onto the intertwiner whenever one exists and
//!   collapses to zero when the B-conjugated representation is inequivalent.
//!
//! Every returned operator is phase-normalized (largest-modulus entry made
//! real positive, row-major tie break), so runs are reproducible and the
//! projective cocycle is a well-defined number.

use crate::lattice::{LatticeError, LatticePoint};
use crate::numerics::{
    self, adjoint, fro_norm, inverse, scalar_part, CMatrix, NumericsError,
};
use crate::schrodinger::{
    coords_to_index, index_to_coords, pi_basis, PiOp, RepContext, SchrodingerError,
};
use crate::symplectic::{
    check_symmetric, det_i64, int_inverse, GeneratorItem, GeneratorWord, SpElement,
    SymplecticError,
};
use ndarray::Array2;
use num_complex::Complex64;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Seed of the fixed frequency sample used by every Egorov residual, so the
/// reported number is a deterministic function of (context, U, B).
const EGOROV_SAMPLE_SEED: u64 = 0x4547_4f52;

/// Random frequencies added to the 2n basis vectors in the Egorov sample.
const EGOROV_SAMPLE_COUNT: usize = 20;

const SOLVER_ATTEMPTS: u64 = 5;

#[derive(Debug, Error, Clone)]
pub enum IntertwinerError {
    #[error("{0}")]
    Symplectic(#[from] SymplecticError),
    #[error("{0}")]
    Schrodinger(#[from] SchrodingerError),
    #[error("{0}")]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("block size {got} does not match context dimension {expected}")]
    BlockDimension { got: usize, expected: usize },
    #[error(
        "det S ≡ {det_mod_n} shares a factor with N = {modulus}: transform built but not unitary"
    )]
    SingularModN {
        det_mod_n: i64,
        modulus: i64,
        op: Box<CMatrix>,
    },
    #[error("no intertwiner found after {attempts} seeds: conjugated representation is inequivalent")]
    NoIntertwiner { attempts: u64 },
    #[error("operator ratio is not scalar (residual {residual:.3e})")]
    NotScalar { residual: f64 },
}

/// How a ρ operator was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoMethod {
    Formula,
    Solver,
}

impl std::fmt::Display for RhoMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RhoMethod::Formula => write!(f, "formula"),
            RhoMethod::Solver => write!(f, "solver"),
        }
    }
}

/// A phase-normalized intertwiner together with its certification data.
#[derive(Debug, Clone)]
pub struct RhoResult {
    op: CMatrix,
    method: RhoMethod,
    egorov_residual: f64,
}

impl RhoResult {
    pub fn op(&self) -> &CMatrix {
        &self.op
    }

    pub fn into_op(self) -> CMatrix {
        self.op
    }

    pub fn method(&self) -> RhoMethod {
        self.method
    }

    pub fn egorov_residual(&self) -> f64 {
        self.egorov_residual
    }
}

fn check_block(ctx: &RepContext, mat: &Array2<i64>) -> Result<(), IntertwinerError> {
    let n = ctx.planck().n();
    if mat.nrows() != n || mat.ncols() != n {
        return Err(IntertwinerError::BlockDimension {
            got: mat.nrows().max(mat.ncols()),
            expected: n,
        });
    }
    Ok(())
}

/// Permutation operator for the block diag(A, ᵀA⁻¹): entry 1 at
/// [row x, col A⁻¹x mod N].
pub fn rho_gl(ctx: &RepContext, a: &Array2<i64>) -> Result<PiOp, IntertwinerError> {
    check_block(ctx, a)?;
    let ainv = int_inverse(a)?;
    let n = ctx.planck().n();
    let modulus = ctx.planck().modulus();
    let dim = ctx.dim();
    let mut col = vec![0usize; dim];
    for (row, slot) in col.iter_mut().enumerate() {
        let x = index_to_coords(row, n, modulus);
        let mapped: Vec<i64> = (0..n)
            .map(|i| {
                let acc: i128 = (0..n).map(|j| ainv[[i, j]] as i128 * x[j] as i128).sum();
                acc.rem_euclid(modulus as i128) as i64
            })
            .collect();
        *slot = coords_to_index(&mapped, modulus);
    }
    Ok(PiOp::new(col, vec![Complex64::new(1.0, 0.0); dim]))
}

/// Diagonal operator for the block [[I, 0], [S, I]]: entry
/// exp(iπ(M−εN)⟨x,Sx⟩/N) at x, computed on representatives x ∈ [0,N)^n.
/// The value does not depend on the representative.
pub fn rho_unipotent(ctx: &RepContext, s: &Array2<i64>) -> Result<PiOp, IntertwinerError> {
    check_block(ctx, s)?;
    check_symmetric(s)?;
    let planck = ctx.planck();
    let n = planck.n();
    let modulus = planck.modulus();
    let mult = -planck.struct_multiplier();
    let dim = ctx.dim();
    let mut val = vec![Complex64::new(0.0, 0.0); dim];
    for (row, slot) in val.iter_mut().enumerate() {
        let x = index_to_coords(row, n, modulus);
        let q: i128 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| x[i] as i128 * s[[i, j]] as i128 * x[j] as i128)
            .sum();
        *slot = planck.phase(mult * q);
    }
    Ok(PiOp::new((0..dim).collect(), val))
}

/// The finite transform for the block [[0, −S⁻¹], [S, 0]]: dense matrix
/// N^{−n/2}·exp(2πiM⟨x,Sy⟩/N). Unitary exactly when gcd(det S, N) = 1;
/// otherwise the operator is still built but returned inside `SingularModN`.
pub fn rho_fourier(ctx: &RepContext, s: &Array2<i64>) -> Result<CMatrix, IntertwinerError> {
    check_block(ctx, s)?;
    check_symmetric(s)?;
    let planck = ctx.planck();
    let n = planck.n();
    let modulus = planck.modulus();
    let dim = ctx.dim();
    let scale = (dim as f64).sqrt().recip();
    let mut out = Array2::zeros((dim, dim));
    for row in 0..dim {
        let x = index_to_coords(row, n, modulus);
        for coli in 0..dim {
            let y = index_to_coords(coli, n, modulus);
            let pairing: i128 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| x[i] as i128 * s[[i, j]] as i128 * y[j] as i128)
                .sum();
            out[[row, coli]] = planck.phase(2 * planck.numer() as i128 * pairing) * scale;
        }
    }
    let det_mod_n = det_i64(s).rem_euclid(modulus as i128) as i64;
    if det_mod_n.gcd(&modulus) != 1 {
        return Err(IntertwinerError::SingularModN {
            det_mod_n,
            modulus,
            op: Box::new(out),
        });
    }
    Ok(out)
}

/// The operator for one generator, as a dense matrix.
pub fn rho_item(ctx: &RepContext, item: &GeneratorItem) -> Result<CMatrix, IntertwinerError> {
    match item {
        GeneratorItem::Gl(a) => Ok(rho_gl(ctx, a)?.to_matrix()),
        GeneratorItem::Unipotent(s) => Ok(rho_unipotent(ctx, s)?.to_matrix()),
        GeneratorItem::Fourier(s) => rho_fourier(ctx, s),
    }
}

/// Multiplies the matrix by a unit scalar so its largest-modulus entry
/// (row-major tie break) becomes real positive.
pub fn phase_normalize(mut m: CMatrix) -> CMatrix {
    let mut best = Complex64::new(0.0, 0.0);
    let mut best_norm = 0.0;
    for v in m.iter() {
        let nv = v.norm();
        if nv > best_norm {
            best_norm = nv;
            best = *v;
        }
    }
    if best_norm > 0.0 {
        let u = best / best_norm;
        m.mapv_inplace(|z| z * u.conj());
    }
    m
}

/// Worst intertwining defect max_ξ ‖U·π(ξ)·U⁻¹ − π(Bξ)‖_F over the 2n basis
/// frequencies plus a fixed random sample.
pub fn egorov_residual(
    ctx: &RepContext,
    u: &CMatrix,
    b: &SpElement,
) -> Result<f64, IntertwinerError> {
    let n = ctx.planck().n();
    let uinv = inverse(u)?;
    let mut rng = ChaCha8Rng::seed_from_u64(EGOROV_SAMPLE_SEED);
    let mut sample = LatticePoint::basis(n);
    let bound = 2 * ctx.planck().modulus();
    sample.extend((0..EGOROV_SAMPLE_COUNT).map(|_| LatticePoint::random(n, bound, &mut rng)));

    let mut worst = 0.0f64;
    for xi in &sample {
        let lhs = u.dot(&pi_basis(ctx, xi)?.to_matrix()).dot(&uinv);
        let rhs = pi_basis(ctx, &b.apply(xi)?)?.to_matrix();
        worst = worst.max(fro_norm(&(lhs - rhs)));
    }
    Ok(worst)
}

/// Ordered product of generator operators for the word, phase-normalized and
/// certified against the word's matrix.
pub fn rho_word(ctx: &RepContext, word: &GeneratorWord) -> Result<RhoResult, IntertwinerError> {
    let mut op = numerics::identity(ctx.dim());
    for item in word.items() {
        op = op.dot(&rho_item(ctx, item)?);
    }
    let op = phase_normalize(op);
    let egorov = egorov_residual(ctx, &op, &word.to_matrix())?;
    Ok(RhoResult { op, method: RhoMethod::Formula, egorov_residual: egorov })
}

/// Schur averaging: U = Σ_ξ π(Bξ)·A·π(ξ)† for a seeded random A, with ξ
/// running over one full period of the representation. ω-invariance of B
/// makes every structure phase cancel, so U intertwines exactly; when the
/// conjugated representation is inequivalent the average collapses to zero
/// and fresh seeds are tried before reporting `NoIntertwiner`.
///
/// The period is [0,N)^{2n} for the canonical context. A twist χ adds
/// scalars χ^N(λ) on the sublattice NΛ*, so the box grows to
/// [0, lcm(N, twist denominators))^{2n}; only on that box do the two factor
/// systems agree and the vanishing argument hold.
pub fn rho_solve(
    ctx: &RepContext,
    b: &SpElement,
    seed: u64,
) -> Result<RhoResult, IntertwinerError> {
    let planck = ctx.planck();
    let n = planck.n();
    let dim = ctx.dim();
    let period = ctx
        .twist()
        .angles()
        .iter()
        .fold(planck.modulus(), |acc, a| acc.lcm(a.denom()));
    let count = (period as usize).pow(2 * n as u32);

    let mut pairs = Vec::with_capacity(count);
    for i in 0..count {
        let coords = index_to_coords(i, 2 * n, period);
        let xi = LatticePoint::from_coords(&coords)?;
        let left = pi_basis(ctx, &b.apply(&xi)?)?;
        let right = pi_basis(ctx, &xi)?;
        pairs.push((left, right));
    }

    for attempt in 0..SOLVER_ATTEMPTS {
        let a = numerics::seeded_random_operator(dim, seed.wrapping_add(attempt));
        let mut acc: CMatrix = Array2::zeros((dim, dim));
        for (left, right) in &pairs {
            acc += &left.sandwich(&a, right);
        }
        if fro_norm(&acc) <= 1e-8 * fro_norm(&a) {
            continue;
        }
        let scale = (dim as f64).sqrt() / fro_norm(&acc);
        acc.mapv_inplace(|z| z * scale);
        let op = phase_normalize(acc);
        let egorov = egorov_residual(ctx, &op, b)?;
        return Ok(RhoResult { op, method: RhoMethod::Solver, egorov_residual: egorov });
    }
    Err(IntertwinerError::NoIntertwiner { attempts: SOLVER_ATTEMPTS })
}

/// The unit scalar c with U₁·U₂ = c·U₁₂. Scalarity is Schur-guaranteed, so a
/// non-scalar ratio reports an error instead of a number.
pub fn cocycle_scalar(
    u1: &CMatrix,
    u2: &CMatrix,
    u12: &CMatrix,
) -> Result<Complex64, IntertwinerError> {
    let ratio = u1.dot(u2).dot(&adjoint(u12));
    let (lambda, residual) = scalar_part(&ratio);
    if residual > 1e-10 || (lambda.norm() - 1.0).abs() > 1e-10 {
        return Err(IntertwinerError::NotScalar { residual });
    }
    Ok(lambda)
}

/// Cocycle of two certified results against the result for the product
/// group element.
pub fn cocycle(
    r1: &RhoResult,
    r2: &RhoResult,
    r12: &RhoResult,
) -> Result<Complex64, IntertwinerError> {
    cocycle_scalar(r1.op(), r2.op(), r12.op())
}
