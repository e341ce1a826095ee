//! Dense complex matrix type used throughout the crate.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand for complex scalars.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense rectangular matrix of complex double-precision scalars,
/// stored row-major. Dimensions are always positive and entries finite.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix {
                reason: format!("dimensions must be positive, got {rows}x{cols}"),
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix {
                reason: format!(
                    "expected {} entries for a {rows}x{cols} matrix, got {}",
                    rows * cols,
                    entries.len()
                ),
            });
        }
        if let Some(idx) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidMatrix {
                reason: format!(
                    "non-finite entry at row {}, column {}",
                    idx / cols,
                    idx % cols
                ),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Internal constructor for entries produced by our own arithmetic.
    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(rows > 0 && cols > 0);
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_parts(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Convenience constructor from nested real rows (imaginary parts zero).
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix {
                reason: "ragged rows".to_string(),
            });
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(r, c, entries)
    }

    /// Convenience constructor from nested complex rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix {
                reason: "ragged rows".to_string(),
            });
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Matrix with a single column.
    pub fn column_vector(entries: Vec<Complex64>) -> Result<Self> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    /// Conjugate transpose; realizes the Hilbert-space adjoint.
    pub fn adjoint(&self) -> Matrix {
        let mut out = vec![Complex64::new(0.0, 0.0); self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.entries[i * self.cols + j].conj();
            }
        }
        Matrix::from_parts(self.cols, self.rows, out)
    }

    /// Scales every entry by a complex factor.
    pub fn scale(&self, factor: Complex64) -> Matrix {
        Matrix::from_parts(
            self.rows,
            self.cols,
            self.entries.iter().map(|&z| z * factor).collect(),
        )
    }

    /// Scales every entry by a real factor.
    pub fn scale_re(&self, factor: f64) -> Matrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance to the adjoint; zero for Hermitian matrices.
    pub fn hermitian_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        (&self.adjoint() - self).norm_fro()
    }

    /// (M + M*)/2.
    pub fn hermitian_part(&self) -> Matrix {
        assert_eq!(self.rows, self.cols, "hermitian part needs a square matrix");
        (&self.adjoint() + self).scale_re(0.5)
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            out[i] = row.iter().zip(x).map(|(&a, &b)| a * b).sum();
        }
        out
    }

    /// Stacks `top` over `bottom`; column counts must agree.
    pub fn vstack(top: &Matrix, bottom: &Matrix) -> Matrix {
        assert_eq!(top.cols, bottom.cols, "vstack column mismatch");
        let mut entries = Vec::with_capacity((top.rows + bottom.rows) * top.cols);
        entries.extend_from_slice(&top.entries);
        entries.extend_from_slice(&bottom.entries);
        Matrix::from_parts(top.rows + bottom.rows, top.cols, entries)
    }

    /// Places `left` and `right` side by side; row counts must agree.
    pub fn hstack(left: &Matrix, right: &Matrix) -> Matrix {
        assert_eq!(left.rows, right.rows, "hstack row mismatch");
        let cols = left.cols + right.cols;
        let mut entries = Vec::with_capacity(left.rows * cols);
        for i in 0..left.rows {
            entries.extend_from_slice(&left.entries[i * left.cols..(i + 1) * left.cols]);
            entries.extend_from_slice(&right.entries[i * right.cols..(i + 1) * right.cols]);
        }
        Matrix::from_parts(left.rows, cols, entries)
    }

    /// Copy of columns `start..end` as a new matrix. Panics if the range is
    /// empty or out of bounds.
    pub fn columns(&self, start: usize, end: usize) -> Matrix {
        assert!(start < end && end <= self.cols, "bad column range");
        let cols = end - start;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(&self.entries[i * self.cols + start..i * self.cols + end]);
        }
        Matrix::from_parts(self.rows, cols, entries)
    }

    /// Single column as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        assert!(j < self.cols);
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "add shape mismatch"
        );
        Matrix::from_parts(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sub shape mismatch"
        );
        Matrix::from_parts(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale_re(-1.0)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "mul shape mismatch");
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..m {
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.entries[l * n..(l + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Matrix::from_parts(m, n, out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(Matrix::new(0, 3, vec![]).is_err());
        assert!(Matrix::new(2, 2, vec![c64(1.0, 0.0); 3]).is_err());
        assert!(Matrix::new(1, 1, vec![c64(f64::NAN, 0.0)]).is_err());
        assert!(Matrix::new(1, 1, vec![c64(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn adjoint_swaps_and_conjugates() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let a = m.adjoint();
        assert_eq!(
            a,
            Matrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap()
        );

        let i1 = Matrix::new(1, 1, vec![c64(0.0, 1.0)]).unwrap();
        assert_eq!(i1.adjoint().get(0, 0), c64(0.0, -1.0));
    }

    #[test]
    fn adjoint_is_an_involution() {
        let m = Matrix::from_rows(&[
            vec![c64(1.0, 2.0), c64(-0.5, 0.25), c64(0.0, -3.0)],
            vec![c64(4.0, 0.0), c64(0.0, 0.0), c64(2.5, 1.5)],
        ])
        .unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn product_against_hand_computation() {
        let a = Matrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let b = Matrix::from_real_rows(&[&[5.0, 6.0], &[7.0, 8.0]]).unwrap();
        let c = &a * &b;
        assert_eq!(
            c,
            Matrix::from_real_rows(&[&[19.0, 22.0], &[43.0, 50.0]]).unwrap()
        );
    }

    #[test]
    fn stacking_shapes() {
        let a = Matrix::zeros(2, 3);
        let b = Matrix::identity(3);
        let t = Matrix::vstack(&a, &b);
        assert_eq!((t.rows(), t.cols()), (5, 3));
        let h = Matrix::hstack(&b, &b);
        assert_eq!((h.rows(), h.cols()), (3, 6));
        assert_eq!(h.get(1, 4), c64(1.0, 0.0));
    }
}
