//! Dense square matrices in row-major layout.
//!
//! This is the raw carrier shared by every structured matrix type in
//! the crate. It is deliberately small: the library targets desk-scale
//! dimensions (n <= ~64), so everything is plain `Vec<f64>` arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Matrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds from a row-major slice of length `dim * dim`.
    pub fn from_rows(dim: usize, data: &[f64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, data.len()));
        }
        Ok(Matrix {
            dim,
            data: data.to_vec(),
        })
    }

    /// Convenience constructor from nested arrays, mostly for tests.
    pub fn from_nested(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(dim, row.len()));
            }
            data.extend_from_slice(row);
        }
        Matrix::from_rows(dim, &data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut t = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let row_k = other.row(k);
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a * row_k[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `(M + M^T) / 2`.
    pub fn symmetrize(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, a| m.max(a.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Congruence `X^T A X`, symmetrized against roundoff when `A` is symmetric.
    pub fn congruence(&self, x: &Matrix) -> Matrix {
        x.transpose().mul(self).mul(x).symmetrize()
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            let mut best = a[col * n + col].abs();
            for r in (col + 1)..n {
                let v = a[r * n + col].abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det *= d;
            for r in (col + 1)..n {
                let f = a[r * n + col] / d;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    /// Lower-triangular Cholesky factor `L` with `self = L L^T`.
    pub fn cholesky(&self) -> Result<Matrix> {
        let n = self.dim;
        let mut l = Matrix::zeros(n);
        let mut max_diag = 0.0_f64;
        for i in 0..n {
            max_diag = max_diag.max(self.get(i, i));
            for j in 0..=i {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                if i == j {
                    if s <= 0.0 {
                        return Err(Error::NotPositiveDefinite {
                            min_eig: s,
                            max_eig: max_diag,
                        });
                    }
                    l.set(i, j, s.sqrt());
                } else {
                    l.set(i, j, s / l.get(j, j));
                }
            }
        }
        Ok(l)
    }

    /// Largest absolute symmetry deviation `|a_ij - a_ji|`.
    pub fn symmetry_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        dev
    }
}

/// `L^{-1} A L^{-T}` for lower-triangular `L`, by two triangular solves;
/// orthogonally similar to `X^{-1/2} A X^{-1/2}` when `X = L L^T`, so it
/// carries the same spectrum with better accuracy than forming `X^{-1/2}`.
pub(crate) fn whiten_lower(l: &Matrix, a: &Matrix) -> Matrix {
    let n = l.dim();
    // Y from L Y = A, column by column.
    let mut y = a.clone();
    for col in 0..n {
        for i in 0..n {
            let mut s = y.get(i, col);
            for k in 0..i {
                s -= l.get(i, k) * y.get(k, col);
            }
            y.set(i, col, s / l.get(i, i));
        }
    }
    // Z from Z L^T = Y, i.e. L Z^T = Y^T.
    let mut zt = y.transpose();
    for col in 0..n {
        for i in 0..n {
            let mut s = zt.get(i, col);
            for k in 0..i {
                s -= l.get(i, k) * zt.get(k, col);
            }
            zt.set(i, col, s / l.get(i, i));
        }
    }
    zt.transpose().symmetrize()
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

/// JSON exchange form `{"dim": n, "data": [row-major reals]}`.
///
/// Serialization round-trips exactly: floats are written in the shortest
/// form that parses back to the same `f64` (full precision).
#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixJson {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            data: self.data.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        Matrix::from_rows(raw.dim, &raw.data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_nested(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let b = Matrix::from_nested(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 0), 2.0);
        assert_eq!(ab.get(0, 1), 1.0);
        assert_eq!(ab.get(1, 0), 4.0);
        assert_eq!(ab.get(1, 1), 3.0);
        assert_eq!(a.transpose().get(0, 1), 3.0);
    }

    #[test]
    fn determinant_with_pivoting() {
        let a = Matrix::from_nested(&[&[0.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert!((a.det() + 6.0).abs() < 1e-14);
        let id = Matrix::identity(5);
        assert!((id.det() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn json_roundtrip() {
        let a = Matrix::from_nested(&[&[1.5, -2.25], &[0.125, 4.0]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"dim\":2"));
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn bad_shape_rejected() {
        assert!(Matrix::from_rows(2, &[1.0, 2.0, 3.0]).is_err());
        assert!(Matrix::from_rows(0, &[]).is_err());
    }
}
