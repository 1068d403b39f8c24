//! Dense row-major matrix and vector types.
//!
//! Storage is a flat `Vec<f64>` with `data[i * cols + j] = A[i, j]`. Values
//! are immutable after construction; every operation returns a new value, so
//! instances can be shared freely across threads.

use crate::error::{Error, Result};

/// A dense matrix of 64-bit floats in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Creates a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Degenerate(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(
                "Matrix::new",
                format!(
                    "data length {} does not match {rows}x{cols}",
                    data.len()
                ),
            ));
        }
        Ok(Self { rows, cols, data })
    }

    /// Creates a matrix from row slices. Panics on ragged or empty input;
    /// intended for literals in tests and examples.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        assert!(!rows.is_empty(), "from_rows: no rows");
        let cols = rows[0].len();
        assert!(cols > 0, "from_rows: empty rows");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "from_rows: row {i} has wrong length");
            data.extend_from_slice(r);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zeros: dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a contiguous slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Standard matrix product `self * other`.
    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::shape(
                "mat_mul",
                format!(
                    "left is {}x{}, right is {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = out.row_mut(i);
            for (k, &a_ik) in a_row.iter().enumerate() {
                if a_ik == 0.0 {
                    continue;
                }
                let b_row = other.row(k);
                for (o, &b_kj) in out_row.iter_mut().zip(b_row) {
                    *o += a_ik * b_kj;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mat_vec(&self, v: &Vector) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::shape(
                "mat_vec",
                format!(
                    "matrix is {}x{}, vector has length {}",
                    self.rows,
                    self.cols,
                    v.len()
                ),
            ));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            out.push(dot_slices(self.row(i), v.data()));
        }
        Ok(Vector::new(out))
    }

    /// Transpose-vector product `self^T * v`, computed without materializing
    /// the transpose.
    pub fn transpose_vec(&self, v: &Vector) -> Result<Vector> {
        if self.rows != v.len() {
            return Err(Error::shape(
                "transpose_vec",
                format!(
                    "matrix is {}x{}, vector has length {}",
                    self.rows,
                    self.cols,
                    v.len()
                ),
            ));
        }
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v.get(i);
            if vi == 0.0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o += vi * x;
            }
        }
        Ok(Vector::new(out))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Elementwise difference `self - other`.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(
                "Matrix::sub",
                format!(
                    "left is {}x{}, right is {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// A dense vector of 64-bit floats.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    pub fn new(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            data: vec![0.0; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self {
            data: vec![1.0; len],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.data[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: f64) {
        self.data[i] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Dot product. Panics on length mismatch.
    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        dot_slices(&self.data, &other.data)
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        dot_slices(&self.data, &self.data).sqrt()
    }

    /// Elementwise difference. Panics on length mismatch.
    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len(), "sub: length mismatch");
        Vector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector::new(self.data.iter().map(|v| v * s).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[inline]
pub(crate) fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::rng::{gaussian_matrix, Rng};
    use proptest::prelude::*;

    #[test]
    fn identity_times_matrix_is_identity_map() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]);
        let i3 = Matrix::identity(3);
        let prod = i3.mat_mul(&a).unwrap();
        assert_eq!(prod, a);
    }

    #[test]
    fn hand_product() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = Matrix::from_rows(&[&[5.0], &[6.0]]);
        let c = a.mat_mul(&b).unwrap();
        assert_eq!(c.data(), &[17.0, 39.0]);
    }

    #[test]
    fn mat_mul_shape_error_names_both_shapes() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::zeros(4, 2);
        let err = a.mat_mul(&b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("2x3") && msg.contains("4x2"), "{msg}");
    }

    #[test]
    fn transpose_is_involution() {
        let mut rng = Rng::from_seed(7);
        let a = gaussian_matrix(5, 3, &mut rng);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn transpose_of_row_is_column() {
        let a = Matrix::from_rows(&[&[1.0, 2.0, 3.0]]);
        let t = a.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 1));
        assert_eq!(t.data(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn transpose_product_rule() {
        let mut rng = Rng::from_seed(11);
        let a = gaussian_matrix(3, 4, &mut rng);
        let b = gaussian_matrix(4, 2, &mut rng);
        let lhs = a.mat_mul(&b).unwrap().transpose();
        let rhs = b.transpose().mat_mul(&a.transpose()).unwrap();
        let diff = lhs.sub(&rhs).unwrap().frobenius_norm();
        assert!(diff <= 1e-12 * (1.0 + lhs.frobenius_norm()), "diff {diff}");
    }

    #[test]
    fn transpose_vec_matches_explicit_transpose() {
        let mut rng = Rng::from_seed(13);
        let a = gaussian_matrix(6, 4, &mut rng);
        let v = Vector::new((0..6).map(|i| i as f64 - 2.5).collect());
        let fast = a.transpose_vec(&v).unwrap();
        let slow = a.transpose().mat_vec(&v).unwrap();
        assert!(fast.sub(&slow).norm() < 1e-14);
    }

    #[test]
    fn degenerate_dimensions_rejected() {
        assert!(Matrix::new(0, 3, vec![]).is_err());
        assert!(Matrix::new(2, 2, vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn mat_mul_is_associative(seed in 0u64..1000, m in 1usize..6, k in 1usize..6, l in 1usize..6, p in 1usize..6) {
            let mut rng = Rng::from_seed(seed);
            let a = gaussian_matrix(m, k, &mut rng);
            let b = gaussian_matrix(k, l, &mut rng);
            let c = gaussian_matrix(l, p, &mut rng);
            let ab_c = a.mat_mul(&b).unwrap().mat_mul(&c).unwrap();
            let a_bc = a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap();
            let scale = ab_c.frobenius_norm().max(1.0);
            prop_assert!(ab_c.sub(&a_bc).unwrap().frobenius_norm() <= 1e-10 * scale);
        }
    }
}
