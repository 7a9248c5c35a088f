//! Dense matrices of Novikov scalars sharing one ring.

use alloc::vec::Vec;
use core::fmt;

use crate::novikov::{Exponent, FieldElement, NovikovScalar, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    Shape { expected: (usize, usize), found: (usize, usize) },
    RingMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {}x{}, found {}x{}", expected.0, expected.1, found.0, found.1)
            }
            MatrixError::RingMismatch => f.write_str("entries from different rings"),
        }
    }
}

impl core::error::Error for MatrixError {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    data: Vec<NovikovScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, ring: &Ring) -> Self {
        Matrix { rows, cols, ring: ring.clone(), data: alloc::vec![NovikovScalar::zero(ring); rows * cols] }
    }

    pub fn identity(n: usize, ring: &Ring) -> Self {
        Self::diagonal(&alloc::vec![NovikovScalar::one(ring); n], ring)
    }

    pub fn diagonal(entries: &[NovikovScalar], ring: &Ring) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n, ring);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ring: &Ring, mut f: impl FnMut(usize, usize) -> NovikovScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.ring(), ring, "entry from a different ring");
                data.push(v);
            }
        }
        Matrix { rows, cols, ring: ring.clone(), data }
    }

    pub fn from_rows(rows: Vec<Vec<NovikovScalar>>, ring: &Ring) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Shape { expected: (r, c), found: (r, row.len()) });
            }
            for v in row {
                if v.ring() != ring {
                    return Err(MatrixError::RingMismatch);
                }
                data.push(v);
            }
        }
        Ok(Matrix { rows: r, cols: c, ring: ring.clone(), data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &NovikovScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NovikovScalar) {
        assert_eq!(v.ring(), &self.ring, "entry from a different ring");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[NovikovScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<NovikovScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<NovikovScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(NovikovScalar::is_zero)
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Shape { expected: (self.cols, other.cols), found: (other.rows, other.cols) });
        }
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        let mut out = Matrix::zeros(self.rows, other.cols, &self.ring);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape { expected: (self.rows, self.cols), found: (other.rows, other.cols) });
        }
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, ring: self.ring.clone(), data })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|v| -v)
    }

    pub fn scale(&self, s: &NovikovScalar) -> Matrix {
        self.map(|v| v * s)
    }

    pub fn shift(&self, e: &Rational) -> Matrix {
        self.map(|v| v.shift(e))
    }

    pub fn map(&self, f: impl Fn(&NovikovScalar) -> NovikovScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, ring: self.ring.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, &self.ring, |i, j| self.get(j, i).clone())
    }

    pub fn with_cutoff(&self, cutoff: &Exponent) -> Matrix {
        let ring = self.ring.with_cutoff(cutoff.clone());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.with_cutoff(cutoff)).collect(),
            ring,
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(MatrixError::Shape { expected: (other.rows, self.cols), found: (other.rows, other.cols) });
        }
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch);
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols, ring: self.ring.clone(), data })
    }

    /// The submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), &self.ring, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduction to the residue field.
    pub fn residue(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).iter().map(NovikovScalar::residue).collect()).collect()
    }

    pub fn min_valuation(&self) -> Exponent {
        self.data.iter().map(NovikovScalar::valuation).min().unwrap_or(Exponent::Infinite)
    }

    pub fn entries(&self) -> &[NovikovScalar] {
        &self.data
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", v)?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
