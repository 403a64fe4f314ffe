//! Integral symplectic matrices, the three generator families of Sp(2n, Z),
//! and words in those generators.
//!
//! Block convention: a 2n × 2n matrix acts on coordinates (m, n) with the
//! position block first, and preserves the form given by
//! J = [[0, I], [−I, 0]]. The generator families are
//!
//!   gl(A)        = [[A, 0], [0, (Aᵀ)⁻¹]]      for A ∈ GL(n, Z),
//!   unipotent(S) = [[I, 0], [S, I]]           for S symmetric,
//!   fourier(S)   = [[0, −S⁻¹], [S, 0]]        for S symmetric, det S = ±1.
//!
//! Every item constructor checks its invariant, so a `GeneratorWord` always
//! multiplies out to a genuine symplectic matrix.

use crate::lattice::LatticePoint;
use ndarray::Array2;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("matrix must be square with even size, got {0}x{1}")]
    BadShape(usize, usize),
    #[error("not symplectic: BᵀJB differs from J first at row {row}, col {col}")]
    NotSymplectic { row: usize, col: usize },
    #[error("matrix must be {0}x{0}, got {1}x{2}")]
    BadBlockShape(usize, usize, usize),
    #[error("matrix is not invertible over the integers (det = {0})")]
    NotUnimodular(i128),
    #[error("matrix must be symmetric, differs first at row {row}, col {col}")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0}")]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// J = [[0, I], [−I, 0]], the Gram matrix of ω in the (m, n) ordering.
pub fn omega_matrix(n: usize) -> Array2<i64> {
    let mut j = Array2::zeros((2 * n, 2 * n));
    for i in 0..n {
        j[[i, n + i]] = 1;
        j[[n + i, i]] = -1;
    }
    j
}

fn int_matmul(a: &Array2<i64>, b: &Array2<i64>) -> Array2<i64> {
    let (r, k) = a.dim();
    let c = b.dim().1;
    let mut out = Array2::zeros((r, c));
    for i in 0..r {
        for j in 0..c {
            let mut acc: i128 = 0;
            for t in 0..k {
                acc += a[[i, t]] as i128 * b[[t, j]] as i128;
            }
            out[[i, j]] = i64::try_from(acc).expect("entry growth exceeds i64");
        }
    }
    out
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_i64(mat: &Array2<i64>) -> i128 {
    let n = mat.nrows();
    assert_eq!(n, mat.ncols(), "determinant needs a square matrix");
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| mat[[i, j]] as i128).collect())
        .collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&p| a[p][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Inverse of an integer matrix with det = ±1, by adjugate-style elimination
/// carried out on rationals and checked to land back in the integers.
pub fn int_inverse(mat: &Array2<i64>) -> Result<Array2<i64>, SymplecticError> {
    let n = mat.nrows();
    assert_eq!(n, mat.ncols(), "inverse needs a square matrix");
    let det = det_i64(mat);
    if det != 1 && det != -1 {
        return Err(SymplecticError::NotUnimodular(det));
    }
    // Gauss-Jordan on an augmented rational matrix stored as (num, den).
    let mut a: Vec<Vec<num_rational::Ratio<i128>>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n {
                        mat[[i, j]] as i128
                    } else {
                        (j - n == i) as i128
                    };
                    num_rational::Ratio::from_integer(v)
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != num_rational::Ratio::from_integer(0))
            .expect("unimodular matrix cannot have a zero column");
        a.swap(col, pivot);
        let p = a[col][col];
        for j in 0..2 * n {
            a[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                for j in 0..2 * n {
                    let sub = f * a[col][j];
                    a[r][j] -= sub;
                }
            }
        }
    }
    let mut out = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let v = a[i][n + j];
            assert!(v.is_integer(), "unimodular inverse must be integral");
            out[[i, j]] = i64::try_from(v.to_integer()).expect("inverse entry exceeds i64");
        }
    }
    Ok(out)
}

/// An element of Sp(2n, Z), validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpElement {
    n: usize,
    mat: Array2<i64>,
}

impl SpElement {
    /// Checks BᵀJB = J and wraps the matrix.
    pub fn validate(mat: Array2<i64>) -> Result<Self, SymplecticError> {
        let (r, c) = mat.dim();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(SymplecticError::BadShape(r, c));
        }
        let n = r / 2;
        let j = omega_matrix(n);
        let btjb = int_matmul(&int_matmul(&mat.t().to_owned(), &j), &mat);
        for row in 0..2 * n {
            for col in 0..2 * n {
                if btjb[[row, col]] != j[[row, col]] {
                    return Err(SymplecticError::NotSymplectic { row, col });
                }
            }
        }
        Ok(SpElement { n, mat })
    }

    pub fn identity(n: usize) -> Self {
        SpElement { n, mat: Array2::eye(2 * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Array2<i64> {
        &self.mat
    }

    /// B ξ as a lattice point.
    pub fn apply(&self, xi: &LatticePoint) -> Result<LatticePoint, SymplecticError> {
        if xi.n() != self.n {
            return Err(SymplecticError::DimensionMismatch(xi.n(), self.n));
        }
        let coords = xi.coords();
        let mut out = vec![0i64; 2 * self.n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (j, &cj) in coords.iter().enumerate() {
                acc += self.mat[[i, j]] as i128 * cj as i128;
            }
            *slot = i64::try_from(acc).expect("transformed coordinate exceeds i64");
        }
        Ok(LatticePoint::from_coords(&out)?)
    }

    /// Matrix product; symplectic elements are closed under it.
    pub fn mul(&self, other: &SpElement) -> Result<SpElement, SymplecticError> {
        if self.n != other.n {
            return Err(SymplecticError::DimensionMismatch(self.n, other.n));
        }
        Ok(SpElement { n: self.n, mat: int_matmul(&self.mat, &other.mat) })
    }

    /// B⁻¹ = −J Bᵀ J, exact in integers.
    pub fn inverse(&self) -> SpElement {
        let j = omega_matrix(self.n);
        let mut inv = int_matmul(&int_matmul(&j, &self.mat.t().to_owned()), &j);
        inv.mapv_inplace(|v| -v);
        SpElement { n: self.n, mat: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == Array2::<i64>::eye(2 * self.n)
    }
}

/// One generator of Sp(2n, Z), with its defining data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorItem {
    /// [[A, 0], [0, (Aᵀ)⁻¹]] with A invertible over Z.
    Gl(Array2<i64>),
    /// [[I, 0], [S, I]] with S symmetric.
    Unipotent(Array2<i64>),
    /// [[0, −S⁻¹], [S, 0]] with S symmetric and det S = ±1.
    Fourier(Array2<i64>),
}

fn check_square(mat: &Array2<i64>) -> Result<usize, SymplecticError> {
    let (r, c) = mat.dim();
    if r != c || r == 0 {
        return Err(SymplecticError::BadBlockShape(r.max(c), r, c));
    }
    Ok(r)
}

pub(crate) fn check_symmetric(mat: &Array2<i64>) -> Result<(), SymplecticError> {
    let n = check_square(mat)?;
    for row in 0..n {
        for col in row + 1..n {
            if mat[[row, col]] != mat[[col, row]] {
                return Err(SymplecticError::NotSymmetric { row, col });
            }
        }
    }
    Ok(())
}

impl GeneratorItem {
    pub fn gl(a: Array2<i64>) -> Result<Self, SymplecticError> {
        check_square(&a)?;
        let det = det_i64(&a);
        if det != 1 && det != -1 {
            return Err(SymplecticError::NotUnimodular(det));
        }
        Ok(GeneratorItem::Gl(a))
    }

    pub fn unipotent(s: Array2<i64>) -> Result<Self, SymplecticError> {
        check_symmetric(&s)?;
        Ok(GeneratorItem::Unipotent(s))
    }

    pub fn fourier(s: Array2<i64>) -> Result<Self, SymplecticError> {
        check_symmetric(&s)?;
        let det = det_i64(&s);
        if det != 1 && det != -1 {
            return Err(SymplecticError::NotUnimodular(det));
        }
        Ok(GeneratorItem::Fourier(s))
    }

    pub fn n(&self) -> usize {
        match self {
            GeneratorItem::Gl(m) | GeneratorItem::Unipotent(m) | GeneratorItem::Fourier(m) => {
                m.nrows()
            }
        }
    }

    /// The generator as an explicit symplectic matrix.
    pub fn to_sp(&self) -> SpElement {
        let n = self.n();
        let mut mat = Array2::zeros((2 * n, 2 * n));
        match self {
            GeneratorItem::Gl(a) => {
                let ainv_t = int_inverse(a)
                    .expect("checked at construction")
                    .t()
                    .to_owned();
                for i in 0..n {
                    for j in 0..n {
                        mat[[i, j]] = a[[i, j]];
                        mat[[n + i, n + j]] = ainv_t[[i, j]];
                    }
                }
            }
            GeneratorItem::Unipotent(s) => {
                for i in 0..n {
                    mat[[i, i]] = 1;
                    mat[[n + i, n + i]] = 1;
                    for j in 0..n {
                        mat[[n + i, j]] = s[[i, j]];
                    }
                }
            }
            GeneratorItem::Fourier(s) => {
                let sinv = int_inverse(s).expect("checked at construction");
                for i in 0..n {
                    for j in 0..n {
                        mat[[i, n + j]] = -sinv[[i, j]];
                        mat[[n + i, j]] = s[[i, j]];
                    }
                }
            }
        }
        SpElement::validate(mat).expect("generator matrices are symplectic by construction")
    }
}

/// A word G_1 G_2 … G_k in the generators; multiplies out left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    n: usize,
    items: Vec<GeneratorItem>,
}

impl GeneratorWord {
    pub fn new(n: usize, items: Vec<GeneratorItem>) -> Result<Self, SymplecticError> {
        for item in &items {
            if item.n() != n {
                return Err(SymplecticError::DimensionMismatch(item.n(), n));
            }
        }
        Ok(GeneratorWord { n, items })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[GeneratorItem] {
        &self.items
    }

    pub fn to_matrix(&self) -> SpElement {
        let mut acc = SpElement::identity(self.n);
        for item in &self.items {
            acc = acc.mul(&item.to_sp()).expect("word items share one dimension");
        }
        acc
    }
}

/// Random element of GL(n, Z) built from a handful of elementary moves, so
/// entries stay small.
pub fn random_gl(n: usize, rng: &mut impl Rng) -> Array2<i64> {
    let mut a: Array2<i64> = Array2::eye(n);
    let moves = 2 * n + 2;
    for _ in 0..moves {
        match rng.gen_range(0..3) {
            0 => {
                // row_i += c · row_j
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                if n > 1 {
                    while j == i {
                        j = rng.gen_range(0..n);
                    }
                    let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for col in 0..n {
                        a[[i, col]] += c * a[[j, col]];
                    }
                }
            }
            1 => {
                let i = rng.gen_range(0..n);
                for col in 0..n {
                    a[[i, col]] = -a[[i, col]];
                }
            }
            _ => {
                if n > 1 {
                    let i = rng.gen_range(0..n);
                    let mut j = rng.gen_range(0..n);
                    while j == i {
                        j = rng.gen_range(0..n);
                    }
                    for col in 0..n {
                        a.swap([i, col], [j, col]);
                    }
                }
            }
        }
    }
    a
}

/// Random symmetric integer matrix with entries in [−bound, bound].
pub fn random_symmetric(n: usize, bound: i64, rng: &mut impl Rng) -> Array2<i64> {
    let mut s = Array2::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            s[[i, j]] = v;
            s[[j, i]] = v;
        }
    }
    s
}

/// Random symmetric matrix with det = ±1, as Aᵀ D A for unimodular A and a
/// ±1 diagonal D.
pub fn random_symmetric_unimodular(n: usize, rng: &mut impl Rng) -> Array2<i64> {
    let a = random_gl(n, rng);
    let mut d: Array2<i64> = Array2::zeros((n, n));
    for i in 0..n {
        d[[i, i]] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    int_matmul(&int_matmul(&a.t().to_owned(), &d), &a)
}

/// Random generator word of the given length, mixing all three families.
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> GeneratorWord {
    let items = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => GeneratorItem::gl(random_gl(n, rng)).expect("random GL matrix is unimodular"),
            1 => GeneratorItem::unipotent(random_symmetric(n, 2, rng))
                .expect("construction is symmetric"),
            _ => GeneratorItem::fourier(random_symmetric_unimodular(n, rng))
                .expect("construction is symmetric unimodular"),
        })
        .collect();
    GeneratorWord::new(n, items).expect("items built at dimension n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validates_cat_map_and_rejects_shear_off_by_one() {
        assert!(SpElement::validate(array![[2, 1], [1, 1]]).is_ok());
        let err = SpElement::validate(array![[2, 1], [1, 2]]).unwrap_err();
        assert!(matches!(err, SymplecticError::NotSymplectic { .. }));
    }

    #[test]
    fn inverse_matches_identity_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1usize, 2, 3] {
            for _ in 0..20 {
                let b = random_word(n, 4, &mut rng).to_matrix();
                assert!(b.mul(&b.inverse()).unwrap().is_identity());
                assert!(b.inverse().mul(&b).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn apply_preserves_omega() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 2] {
            for _ in 0..30 {
                let b = random_word(n, 5, &mut rng).to_matrix();
                let xi = LatticePoint::random(n, 7, &mut rng);
                let eta = LatticePoint::random(n, 7, &mut rng);
                let lhs = b.apply(&xi).unwrap().omega(&b.apply(&eta).unwrap()).unwrap();
                assert_eq!(lhs, xi.omega(&eta).unwrap());
            }
        }
    }

    #[test]
    fn generator_blocks_come_out_as_documented() {
        let g = GeneratorItem::gl(array![[1, 1], [0, 1]]).unwrap().to_sp();
        assert_eq!(
            g.matrix(),
            &array![
                [1, 1, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, -1, 1]
            ]
        );
        let u = GeneratorItem::unipotent(array![[3]]).unwrap().to_sp();
        assert_eq!(u.matrix(), &array![[1, 0], [3, 1]]);
        let f = GeneratorItem::fourier(array![[1]]).unwrap().to_sp();
        assert_eq!(f.matrix(), &array![[0, -1], [1, 0]]);
    }

    #[test]
    fn fourier_squares_to_minus_identity_in_one_dim() {
        let f = GeneratorItem::fourier(array![[1]]).unwrap().to_sp();
        let minus_eye = SpElement::validate(array![[-1, 0], [0, -1]]).unwrap();
        assert_eq!(f.mul(&f).unwrap(), minus_eye);
    }

    #[test]
    fn determinant_handles_zero_pivots_and_signs() {
        assert_eq!(det_i64(&array![[0, 1], [1, 0]]), -1);
        assert_eq!(det_i64(&array![[2, 1], [1, 1]]), 1);
        assert_eq!(det_i64(&array![[0, 2, 1], [1, 0, 0], [0, 1, 0]]), 1);
        assert_eq!(det_i64(&array![[1, 2], [2, 4]]), 0);
    }

    #[test]
    fn integer_inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [1usize, 2, 3] {
            for _ in 0..20 {
                let a = random_gl(n, &mut rng);
                let inv = int_inverse(&a).unwrap();
                assert_eq!(int_matmul(&a, &inv), Array2::<i64>::eye(n));
            }
        }
        assert!(matches!(
            int_inverse(&array![[2, 0], [0, 1]]),
            Err(SymplecticError::NotUnimodular(2))
        ));
    }

    #[test]
    fn generator_constructors_enforce_invariants() {
        assert!(GeneratorItem::gl(array![[2]]).is_err());
        assert!(GeneratorItem::unipotent(array![[1, 2], [3, 1]]).is_err());
        assert!(GeneratorItem::fourier(array![[2]]).is_err());
        assert!(GeneratorItem::fourier(array![[1, 1], [1, 0]]).is_ok());
    }

    #[test]
    fn word_product_is_left_to_right() {
        let g1 = GeneratorItem::unipotent(array![[1]]).unwrap();
        let g2 = GeneratorItem::fourier(array![[1]]).unwrap();
        let w = GeneratorWord::new(1, vec![g1.clone(), g2.clone()]).unwrap();
        let direct = g1.to_sp().mul(&g2.to_sp()).unwrap();
        assert_eq!(w.to_matrix(), direct);
        // [[1,0],[1,1]] · [[0,−1],[1,0]] = [[0,−1],[1,−1]]
        assert_eq!(w.to_matrix().matrix(), &array![[0, -1], [1, -1]]);
    }

    #[test]
    fn random_samplers_satisfy_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [1usize, 2, 3] {
            for _ in 0..20 {
                let a = random_gl(n, &mut rng);
                let d = det_i64(&a);
                assert!(d == 1 || d == -1);
                let s = random_symmetric_unimodular(n, &mut rng);
                assert_eq!(s, s.t().to_owned());
                let ds = det_i64(&s);
                assert!(ds == 1 || ds == -1);
            }
        }
    }
}
