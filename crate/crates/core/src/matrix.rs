//! Small dense complex matrices (2×2 and 4×4).
//!
//! Two-qubit operators use the basis order |00⟩, |01⟩, |10⟩, |11⟩, with the
//! first tensor factor as the most significant bit.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A row-major complex matrix of dimension 2 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; 16],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        match dim {
            2 | 4 => Ok(Self { dim, data: [ZERO; 16] }),
            d => Err(Error::InvalidDimension(d)),
        }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries; the dimension is inferred
    /// from the entry count.
    pub fn from_entries(entries: &[Complex64]) -> Result<Self> {
        let dim = match entries.len() {
            4 => 2,
            16 => 4,
            n => {
                return Err(Error::EntryCount {
                    expected: 16,
                    got: n,
                })
            }
        };
        let mut m = Self::zeros(dim)?;
        m.data[..entries.len()].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::EntryCount {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (j, z) in row.iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        Ok(m)
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Outer product |v⟩⟨v|.
    pub fn projector(v: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(v.len())?;
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)]).collect())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|z| *z *= k);
        out
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |m − m†|.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Kronecker product of two 2×2 matrices.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zeros(4)?;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        out[(2 * a + c, 2 * b + d)] = self[(a, b)] * other[(c, d)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product, checked for matching dimensions.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self { dim: n, data: [ZERO; 16] };
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &Self) -> Result<Self> {
        Ok(self.matmul(m)?.mul_unchecked(&self.adjoint()))
    }

    /// Ascending real eigenvalues of a Hermitian matrix.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eig_hermitian(self)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * self.dim + j]
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data.iter_mut().zip(rhs.data).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data.iter_mut().zip(rhs.data).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.mul_unchecked(&rhs)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, " ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Serialized as nested rows of [re, im] pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let rows: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// The single-qubit Pauli operators.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ONE, ZERO, ZERO, ONE]).unwrap()
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_entries(&[ONE, ZERO, ZERO, -ONE]).unwrap()
    }

    /// σ₁, σ₂, σ₃.
    pub fn sigmas() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }

    /// `v·σ` for a real 3-vector.
    pub fn dot(v: [f64; 3]) -> ComplexMatrix {
        let [sx, sy, sz] = sigmas();
        sx.scale_real(v[0]) + sy.scale_real(v[1]) + sz.scale_real(v[2])
    }
}

/// Ascending real eigenvalues of a Hermitian matrix (tolerance 1e−9 on
/// the Hermiticity check).
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.0)
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors (one per entry of the returned list).
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let defect = m.hermiticity_defect();
    if defect > 1e-9 {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.dim();
    let mut a = m.rows();
    let (values, vectors) = linalg::jacobi_hermitian(&mut a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = order
        .iter()
        .map(|&k| (0..n).map(|row| vectors[row][k]).collect())
        .collect();
    Ok((sorted_values, sorted_vectors))
}

/// Rebuilds Σ f(λ)|v⟩⟨v| from an eigen-decomposition.
fn spectral_map(
    dim: usize,
    values: &[f64],
    vectors: &[Vec<Complex64>],
    f: impl Fn(f64) -> f64,
) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(dim).unwrap();
    for (&lambda, v) in values.iter().zip(vectors) {
        let w = f(lambda);
        if w == 0.0 {
            continue;
        }
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] += v[i] * v[j].conj() * w;
            }
        }
    }
    out
}

/// Default tolerance for clamping tiny negative eigenvalues.
pub const PSD_TOL: f64 = 1e-9;

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// (−tol, 0) are clamped to zero.
pub fn sqrt_psd(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = eigh(m)?;
    if values[0] < -tol {
        return Err(Error::NotPsd(values[0]));
    }
    Ok(spectral_map(m.dim(), &values, &vectors, |l| l.max(0.0).sqrt()))
}

/// Uhlmann fidelity (Tr √(√σ ρ √σ))².
pub fn fidelity(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let root = sqrt_psd(sigma, PSD_TOL)?;
    let mut inner = root.conjugate(rho)?;
    // Restore exact Hermiticity lost to rounding.
    inner = (inner + inner.adjoint()).scale_real(0.5);
    let values = eig_hermitian(&inner)?;
    let min = values[0];
    if min < -PSD_TOL {
        return Err(Error::NotPsd(min));
    }
    let tr: f64 = values.iter().map(|l| l.max(0.0).sqrt()).sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}
