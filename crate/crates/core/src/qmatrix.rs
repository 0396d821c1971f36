//! Dense quaternion matrices.
//!
//! Storage is row-major. Zero-width shapes (`m×0`, `0×n`) are valid everywhere;
//! products over an empty inner dimension yield zero matrices.
//!
//! The arithmetic operators on references (`&a * &b`, `&a + &b`, ...) panic on
//! shape mismatch, like slicing. Use [`QuaternionMatrix::matmul`] and friends
//! for checked variants.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Relative tolerance used by [`chi_extract`] to validate the block symmetry.
pub const EMBEDDING_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QuaternionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} is not finite"
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            values.iter().copied().map(Quaternion::real).collect(),
        )
    }

    pub fn diagonal(entries: &[Quaternion]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Quaternion::ZERO })
    }

    pub fn column_vector(entries: &[Quaternion]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// The backward identity `V_n`: ones on the anti-diagonal.
    pub fn backward_identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "backward identity needs n ≥ 1".into(),
            ));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            if i + j == n - 1 {
                Quaternion::ONE
            } else {
                Quaternion::ZERO
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.data.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    /// Columns selected by index, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        Self::from_fn(self.rows, indices.len(), |i, j| self[(i, indices[j])])
    }

    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let idx: Vec<usize> = range.collect();
        self.select_columns(&idx)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)])
    }

    /// Horizontal concatenation `[self, other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(self.mismatch("hstack", other));
        }
        let c = self.cols;
        Ok(Self::from_fn(self.rows, c + other.cols, |i, j| {
            if j < c {
                self[(i, j)]
            } else {
                other[(i, j - c)]
            }
        }))
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(self.mismatch("vstack", other));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Assembles `[[a11, a12], [a21, a22]]`.
    pub fn from_blocks(a11: &Self, a12: &Self, a21: &Self, a22: &Self) -> Result<Self> {
        a11.hstack(a12)?.vstack(&a21.hstack(a22)?)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("matmul", rhs));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for s in 0..self.cols {
                let a = self[(i, s)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(s, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("add", rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with("sub", rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        op: &'static str,
        rhs: &Self,
        f: impl Fn(Quaternion, Quaternion) -> Quaternion,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|q| q * s)
    }

    /// Left scalar multiple `q·A`.
    pub fn scale_left(&self, q: Quaternion) -> Self {
        self.map(|a| q * a)
    }

    /// Right scalar multiple `A·q`.
    pub fn scale_right(&self, q: Quaternion) -> Self {
        self.map(|a| a * q)
    }

    /// Multiplies column `j` on the right by `scales[j]`, i.e. `A·diag(scales)`.
    pub fn scale_columns_right(&self, scales: &[Quaternion]) -> Self {
        assert_eq!(scales.len(), self.cols, "scale_columns_right: length mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * scales[j])
    }

    pub fn trace(&self) -> Quaternion {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Quaternion-valued inner product `⟨A, B⟩ = trace(B* A)`.
    pub fn inner(&self, other: &Self) -> Result<Quaternion> {
        if self.shape() != other.shape() {
            return Err(self.mismatch("inner", other));
        }
        // trace(B*A) = Σ_{s,i} conj(B[s,i]) A[s,i]
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| b.conj() * a)
            .sum())
    }

    pub fn fro_norm_sqr(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn fro_norm(&self) -> f64 {
        self.fro_norm_sqr().sqrt()
    }

    /// Frobenius distance `‖self − other‖`. Panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).fro_norm()
    }

    /// Largest column Frobenius norm.
    pub fn max_column_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self[(i, j)].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    fn mismatch(&self, op: &'static str, other: &Self) -> Error {
        Error::DimensionMismatch {
            op,
            left: self.shape(),
            right: other.shape(),
        }
    }
}

impl Index<(usize, usize)> for QuaternionMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QuaternionMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn mul(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        self.matmul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn add(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn sub(self, rhs: &QuaternionMatrix) -> QuaternionMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &QuaternionMatrix {
    type Output = QuaternionMatrix;
    fn neg(self) -> QuaternionMatrix {
        self.map(|q| -q)
    }
}

/// Dense complex matrix, row-major. Target of the complex adjoint embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "complex matmul",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|s| self[(i, s)] * rhs[(s, j)]).sum()
        }))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance. Panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// Complex adjoint embedding. Writing `A = A1 + A2·j` with complex `A1`, `A2`,
/// returns the `2m×2n` matrix `[[A1, A2], [-conj(A2), conj(A1)]]`.
pub fn chi_embed(a: &QuaternionMatrix) -> ComplexMatrix {
    let (m, n) = a.shape();
    ComplexMatrix::from_fn(2 * m, 2 * n, |i, j| {
        let q = a[(i % m, j % n)];
        let a1 = Complex64::new(q.w, q.x);
        let a2 = Complex64::new(q.y, q.z);
        match (i < m, j < n) {
            (true, true) => a1,
            (true, false) => a2,
            (false, true) => -a2.conj(),
            (false, false) => a1.conj(),
        }
    })
}

/// Inverse of [`chi_embed`]. The lower blocks must mirror the upper blocks
/// within [`EMBEDDING_TOL`] relative to the matrix norm.
pub fn chi_extract(m: &ComplexMatrix) -> Result<QuaternionMatrix> {
    if !m.rows.is_multiple_of(2) || !m.cols.is_multiple_of(2) {
        return Err(Error::Structure(format!(
            "odd dimensions {}x{}",
            m.rows, m.cols
        )));
    }
    let (r, c) = (m.rows / 2, m.cols / 2);
    let mut defect = 0.0;
    for i in 0..r {
        for j in 0..c {
            defect += (m[(i + r, j + c)] - m[(i, j)].conj()).norm_sqr();
            defect += (m[(i + r, j)] + m[(i, j + c)].conj()).norm_sqr();
        }
    }
    let defect = defect.sqrt();
    if defect > EMBEDDING_TOL * m.fro_norm().max(1.0) {
        return Err(Error::Structure(format!(
            "block symmetry defect {defect:.3e}"
        )));
    }
    Ok(QuaternionMatrix::from_fn(r, c, |i, j| {
        let a1 = m[(i, j)];
        let a2 = m[(i, j + c)];
        Quaternion::new(a1.re, a1.im, a2.re, a2.im)
    }))
}
