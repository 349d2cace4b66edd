//! Symmetric and symmetric positive definite matrices, matrix functions,
//! geodesics, and the two distances on the SPD cone.
//!
//! All matrix functions go through the symmetric eigendecomposition
//! (no Pade / scaling-and-squaring): at desk scale, simplicity wins.
//! Results for inputs with condition number near or above 1e12 are
//! accepted but carry no accuracy promise.

use serde::{Deserialize, Serialize};

use crate::eig::{jacobi_eig, EigDecomposition};
use crate::error::{Error, Result};
use crate::majorization::OrderedPositiveVector;
use crate::matrix::{Matrix, MatrixJson};

/// Relative symmetry tolerance for constructors.
pub const SYMMETRY_REL_TOL: f64 = 1e-12;
/// An SPD constructor requires `min_eig > SPD_REL_TOL * max_eig`.
pub const SPD_REL_TOL: f64 = 1e-12;

/// Real symmetric matrix (tangent-space element, result of a matrix log).
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    mat: Matrix,
}

impl SymMatrix {
    /// Checks symmetry within `1e-12 * (1 + max|entry|)`, then symmetrizes.
    pub fn new(mat: Matrix) -> Result<Self> {
        if mat.dim() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let tol = SYMMETRY_REL_TOL * (1.0 + mat.max_abs());
        for i in 0..mat.dim() {
            for j in (i + 1)..mat.dim() {
                let dev = (mat.get(i, j) - mat.get(j, i)).abs();
                if dev > tol {
                    return Err(Error::NotSymmetric { i, j, deviation: dev });
                }
            }
        }
        Ok(SymMatrix {
            mat: mat.symmetrize(),
        })
    }

    /// Wraps a matrix that is symmetric by construction (still symmetrized).
    pub(crate) fn from_symmetric(mat: Matrix) -> Self {
        SymMatrix {
            mat: mat.symmetrize(),
        }
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        SymMatrix {
            mat: Matrix::from_diag(diag),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            mat: Matrix::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat.get(i, j)
    }

    /// The trace norm `||X||_2 = sqrt(tr X^2)`, i.e. the Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Operator norm, computed as the largest absolute eigenvalue.
    pub fn operator_norm(&self) -> Result<f64> {
        let eig = self.eig()?;
        Ok(eig
            .values
            .iter()
            .fold(0.0_f64, |m, &v| m.max(v.abs())))
    }

    pub fn eig(&self) -> Result<EigDecomposition> {
        jacobi_eig(&self.mat)
    }

    /// Eigenvalues sorted decreasingly, counting multiplicities.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eig()?.values)
    }

    /// Matrix exponential `exp(X)` (inverse of [`SpdMatrix::log`]).
    pub fn exp(&self) -> Result<SpdMatrix> {
        let eig = self.eig()?;
        Ok(SpdMatrix::from_symmetric_unchecked(eig.apply(f64::exp)))
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix {
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        SymMatrix {
            mat: self.mat.sub(&other.mat),
        }
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix {
            mat: self.mat.scale(s),
        }
    }
}

/// Real symmetric positive definite matrix; a point of the SPD cone.
///
/// Construction verifies symmetry and `min_eig > 1e-12 * max_eig` by
/// eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    sym: SymMatrix,
}

impl SpdMatrix {
    pub fn new(mat: Matrix) -> Result<Self> {
        let sym = SymMatrix::new(mat)?;
        let eig = sym.eig()?;
        let (min_eig, max_eig) = (eig.min_value(), eig.max_value());
        if !(min_eig > SPD_REL_TOL * max_eig && min_eig > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eig, max_eig });
        }
        Ok(SpdMatrix { sym })
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_diag(diag))
    }

    pub fn identity(dim: usize) -> Self {
        SpdMatrix {
            sym: SymMatrix::from_symmetric(Matrix::identity(dim)),
        }
    }

    /// For results that are SPD by construction (congruences, spectral maps
    /// with positive images). Skips the eigenvalue check.
    pub(crate) fn from_symmetric_unchecked(mat: Matrix) -> Self {
        SpdMatrix {
            sym: SymMatrix::from_symmetric(mat),
        }
    }

    pub fn dim(&self) -> usize {
        self.sym.dim()
    }

    pub fn as_matrix(&self) -> &Matrix {
        self.sym.as_matrix()
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.sym
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.sym.get(i, j)
    }

    pub fn eig(&self) -> Result<EigDecomposition> {
        self.sym.eig()
    }

    /// The eigenvalue map: eigenvalues sorted decreasingly, all positive.
    pub fn eigenvalues(&self) -> Result<OrderedPositiveVector> {
        OrderedPositiveVector::new(self.eig()?.values)
    }

    /// Matrix logarithm, a symmetric matrix.
    pub fn log(&self) -> Result<SymMatrix> {
        let eig = self.eig()?;
        Ok(SymMatrix::from_symmetric(eig.apply(f64::ln)))
    }

    /// Matrix power `A^p` for real `p`; SPD for every `p`.
    pub fn powf(&self, p: f64) -> Result<SpdMatrix> {
        let eig = self.eig()?;
        Ok(SpdMatrix::from_symmetric_unchecked(
            eig.apply(|x| x.powf(p)),
        ))
    }

    pub fn sqrt(&self) -> Result<SpdMatrix> {
        self.powf(0.5)
    }

    pub fn inverse(&self) -> Result<SpdMatrix> {
        self.powf(-1.0)
    }

    pub fn det(&self) -> Result<f64> {
        Ok(self.eig()?.values.iter().product())
    }

    pub fn log_det(&self) -> Result<f64> {
        Ok(self.eig()?.values.iter().map(|v| v.ln()).sum())
    }

    pub fn add(&self, other: &SpdMatrix) -> Result<SpdMatrix> {
        self.check_dim(other)?;
        Ok(SpdMatrix::from_symmetric_unchecked(
            self.as_matrix().add(other.as_matrix()),
        ))
    }

    /// Scaling by a positive factor.
    pub fn scale(&self, s: f64) -> SpdMatrix {
        assert!(s > 0.0, "SPD scaling needs a positive factor");
        SpdMatrix {
            sym: self.sym.scale(s),
        }
    }

    /// Congruence `X^T A X` for invertible `X`; SPD by Sylvester's law.
    pub fn congruence_by(&self, x: &Matrix) -> SpdMatrix {
        SpdMatrix::from_symmetric_unchecked(self.as_matrix().congruence(x))
    }

    fn check_dim(&self, other: &SpdMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Square root and inverse square root from a single decomposition.
    pub(crate) fn sqrt_pair(&self) -> Result<(Matrix, Matrix)> {
        let eig = self.eig()?;
        Ok((eig.apply(f64::sqrt), eig.apply(|x| 1.0 / x.sqrt())))
    }

    /// Lower-triangular Cholesky factor.
    pub(crate) fn cholesky(&self) -> Result<Matrix> {
        self.as_matrix().cholesky()
    }

    /// Eigenvalues of the whitened matrix `A^{-1/2} B A^{-1/2}`, the shared
    /// core of both distances and the geodesic.
    ///
    /// The spectral route resolves the whitened matrix's small eigenvalues
    /// far better than Cholesky whitening when the pair is wide apart, so
    /// it is used for both distances and the geodesic.
    fn relative_eigenvalues(&self, other: &SpdMatrix) -> Result<Vec<f64>> {
        self.check_dim(other)?;
        let (_, inv_rt) = self.sqrt_pair()?;
        let whitened = other.as_matrix().congruence(&inv_rt);
        Ok(jacobi_eig(&whitened)?.values)
    }

    /// Geodesic `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`.
    ///
    /// `t = 0` gives `A`, `t = 1` gives `B`, `t = 1/2` the geometric mean.
    pub fn geodesic(&self, other: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
        self.check_dim(other)?;
        let (rt, inv_rt) = self.sqrt_pair()?;
        let whitened = other.as_matrix().congruence(&inv_rt);
        let powered = jacobi_eig(&whitened)?.apply(|x| x.powf(t));
        Ok(SpdMatrix::from_symmetric_unchecked(powered.congruence(&rt)))
    }

    /// Geometric mean `A # B`, the geodesic midpoint.
    pub fn geometric_mean(&self, other: &SpdMatrix) -> Result<SpdMatrix> {
        self.geodesic(other, 0.5)
    }

    /// Riemannian trace distance `delta(A, B) = ||log A^{-1/2} B A^{-1/2}||_2`.
    pub fn riemannian_distance(&self, other: &SpdMatrix) -> Result<f64> {
        let rel = self.relative_eigenvalues(other)?;
        Ok(rel.iter().map(|&x| x.ln().powi(2)).sum::<f64>().sqrt())
    }

    /// Thompson metric `d_T(A, B) = max_i |log lambda_i(A^{-1/2} B A^{-1/2})|`.
    pub fn thompson_distance(&self, other: &SpdMatrix) -> Result<f64> {
        let rel = self.relative_eigenvalues(other)?;
        Ok(rel.iter().fold(0.0_f64, |m, &x| m.max(x.ln().abs())))
    }

    /// Loewner order check: is `other - self` positive semidefinite within
    /// `slack` on the minimum eigenvalue?
    pub fn loewner_leq(&self, other: &SpdMatrix, slack: f64) -> Result<bool> {
        self.check_dim(other)?;
        let diff = other.as_matrix().sub(self.as_matrix());
        let eig = jacobi_eig(&diff)?;
        Ok(eig.min_value() >= -slack)
    }
}

impl Serialize for SpdMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpdMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let mat = Matrix::from_rows(raw.dim, &raw.data).map_err(serde::de::Error::custom)?;
        SpdMatrix::new(mat).map_err(serde::de::Error::custom)
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_matrix().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let mat = Matrix::from_rows(raw.dim, &raw.data).map_err(serde::de::Error::custom)?;
        SymMatrix::new(mat).map_err(serde::de::Error::custom)
    }
}
