//! Dense complex linear algebra helpers shared by the representation and
//! verification modules.
//!
//! Everything operates on `ndarray` arrays of `Complex64`. Matrices here are
//! small (dimension N^n, at most a few hundred), so the custom routines are
//! plain O(dim³) eliminations; only the non-symmetric eigensolve defers to
//! LAPACK.

use ndarray::{Array1, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("matrix is not unitary: ‖A†A − I‖ = {deviation:.3e}")]
    NotUnitary { deviation: f64 },
    #[error("shape mismatch: {0}x{1}")]
    Shape(usize, usize),
    #[error("eigensolver failed: {0}")]
    Lapack(String),
}

pub fn identity(dim: usize) -> CMatrix {
    Array2::eye(dim)
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diag().sum()
}

pub fn fro_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Nearest scalar multiple of the identity: returns (λ, ‖A − λI‖_F) with
/// λ = tr(A)/dim, the Frobenius-orthogonal projection onto C·I.
pub fn scalar_part(a: &CMatrix) -> (Complex64, f64) {
    let dim = a.nrows();
    let lambda = trace(a) / dim as f64;
    let mut resid = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
            resid += (a[[i, j]] - want).norm_sqr();
        }
    }
    (lambda, resid.sqrt())
}

/// ‖A†A − I‖_F, zero exactly when A is unitary.
pub fn unitary_deviation(a: &CMatrix) -> f64 {
    let gram = adjoint(a).dot(a);
    let dim = a.nrows();
    fro_norm(&(gram - identity(dim)))
}

/// Inverse by Gauss-Jordan with partial pivoting.
pub fn inverse(a: &CMatrix) -> Result<CMatrix, NumericsError> {
    let dim = a.nrows();
    if a.ncols() != dim {
        return Err(NumericsError::Shape(a.nrows(), a.ncols()));
    }
    let mut work = a.clone();
    let mut out = identity(dim);
    for col in 0..dim {
        let (pivot, pmax) = (col..dim)
            .map(|r| (r, work[[r, col]].norm()))
            .max_by(|(_, x), (_, y)| x.total_cmp(y))
            .expect("column range is nonempty");
        if pmax < 1e-300 {
            return Err(NumericsError::Singular);
        }
        if pivot != col {
            for j in 0..dim {
                work.swap([pivot, j], [col, j]);
                out.swap([pivot, j], [col, j]);
            }
        }
        let inv_p = Complex64::new(1.0, 0.0) / work[[col, col]];
        for j in 0..dim {
            work[[col, j]] *= inv_p;
            out[[col, j]] *= inv_p;
        }
        for r in 0..dim {
            if r != col {
                let f = work[[r, col]];
                if f.norm_sqr() > 0.0 {
                    for j in 0..dim {
                        let (w, o) = (work[[col, j]], out[[col, j]]);
                        work[[r, j]] -= f * w;
                        out[[r, j]] -= f * o;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Deterministic test operator: entries have real and imaginary parts drawn
/// uniformly from [−1, 1], row-major, real part first, from a ChaCha8 stream.
pub fn seeded_random_operator(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Array2::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            let re = rng.gen_range(-1.0..1.0);
            let im = rng.gen_range(-1.0..1.0);
            a[[i, j]] = Complex64::new(re, im);
        }
    }
    a
}

/// Haar-ish random unitary via modified Gram-Schmidt on a random matrix.
/// Good enough for stress tests; not a calibrated Haar sampler.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let mut a: CMatrix = Array2::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            a[[i, j]] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    // Orthonormalize columns, twice for numerical cleanliness.
    for _ in 0..2 {
        for j in 0..dim {
            for k in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..dim {
                    proj += a[[i, k]].conj() * a[[i, j]];
                }
                for i in 0..dim {
                    let v = a[[i, k]];
                    a[[i, j]] -= proj * v;
                }
            }
            let norm = (0..dim).map(|i| a[[i, j]].norm_sqr()).sum::<f64>().sqrt();
            for i in 0..dim {
                a[[i, j]] /= norm;
            }
        }
    }
    a
}

/// Eigenvalue phases of a unitary matrix, sorted ascending in [0, 2π).
///
/// Rejects inputs whose unitary deviation exceeds `tol`. Phases that land
/// within 1e-9 below a full turn are wrapped to 0 so that eigenvalue 1
/// never splits across the seam.
pub fn eigenphases(a: &CMatrix, tol: f64) -> Result<Vec<f64>, NumericsError> {
    let deviation = unitary_deviation(a);
    if deviation > tol {
        return Err(NumericsError::NotUnitary { deviation });
    }
    let (eigs, _) = a
        .eig()
        .map_err(|e| NumericsError::Lapack(e.to_string()))?;
    let mut phases: Vec<f64> = eigs
        .iter()
        .map(|z| {
            let mut arg = z.arg();
            if arg < 0.0 {
                arg += 2.0 * PI;
            }
            if 2.0 * PI - arg <= 1e-9 {
                arg = 0.0;
            }
            arg
        })
        .collect();
    phases.sort_by(f64::total_cmp);
    Ok(phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_part_of_scaled_identity_has_zero_residual() {
        let a = identity(4).mapv(|z| z * c(2.0, -1.0));
        let (lambda, resid) = scalar_part(&a);
        assert_eq!(lambda, c(2.0, -1.0));
        assert_eq!(resid, 0.0);
    }

    #[test]
    fn inverse_round_trips_and_rejects_singular() {
        let a = seeded_random_operator(12, 5);
        let inv = inverse(&a).unwrap();
        assert!(max_abs_diff(&a.dot(&inv), &identity(12)) < 1e-10);
        let zeros: CMatrix = Array2::zeros((3, 3));
        assert!(matches!(inverse(&zeros), Err(NumericsError::Singular)));
    }

    #[test]
    fn seeded_operator_is_deterministic_with_expected_mass() {
        let a = seeded_random_operator(32, 42);
        let b = seeded_random_operator(32, 42);
        assert_eq!(max_abs_diff(&a, &b), 0.0);
        assert!(max_abs_diff(&a, &seeded_random_operator(32, 43)) > 1e-3);
        // E‖A‖²_F = (2/3)·dim² for unit-square entries.
        let mass = fro_norm(&a).powi(2);
        let expect = 2.0 / 3.0 * (32.0f64 * 32.0);
        assert!((mass - expect).abs() < 0.2 * expect, "mass {mass} vs {expect}");
    }

    #[test]
    fn gram_schmidt_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for dim in [2usize, 5, 16] {
            let u = random_unitary(dim, &mut rng);
            assert!(unitary_deviation(&u) < 1e-12);
        }
    }

    #[test]
    fn eigenphases_of_axis_diagonal() {
        let a = Array2::from_diag(&array![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        let phases = eigenphases(&a, 1e-10).unwrap();
        let want = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        for (g, w) in phases.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
    }

    #[test]
    fn eigenphases_wrap_just_below_a_full_turn_to_zero() {
        let z = Complex64::from_polar(1.0, 2.0 * PI - 1e-12);
        let a = Array2::from_diag(&array![z]);
        let phases = eigenphases(&a, 1e-10).unwrap();
        assert_eq!(phases, vec![0.0]);
    }

    #[test]
    fn eigenphases_reject_non_unitary_input() {
        let a = identity(3).mapv(|z| z * c(2.0, 0.0));
        assert!(matches!(
            eigenphases(&a, 1e-8),
            Err(NumericsError::NotUnitary { .. })
        ));
    }

    #[test]
    fn parity_matrix_has_half_turn_spectrum() {
        let a = array![
            [c(0.0, 0.0), c(1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 0.0)]
        ];
        let phases = eigenphases(&a, 1e-12).unwrap();
        assert!((phases[0] - 0.0).abs() < 1e-12);
        assert!((phases[1] - PI).abs() < 1e-12);
    }
}
