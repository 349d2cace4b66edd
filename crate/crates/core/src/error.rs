use thiserror::Error;

/// Errors produced by construction checks and iterative solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix has dimension 0")]
    EmptyMatrix,

    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {deviation:.3e} exceeds tolerance")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },

    #[error("matrix is not positive definite: min eigenvalue {min_eig:.6e}, max eigenvalue {max_eig:.6e}")]
    NotPositiveDefinite { min_eig: f64, max_eig: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNonConvergence { sweeps: usize, residual: f64 },

    #[error("barycenter iteration did not converge within {max_iter} iterations (last residual {residual:.3e})")]
    KarcherNonConvergence { max_iter: usize, residual: f64 },

    #[error("dimension {0} is odd; symplectic operations need a 2n x 2n matrix")]
    OddDimension(usize),

    #[error("symplectic eigenvalue pairing failed: eigenvalues {a:.6e} and {b:.6e} do not match within relative gap {gap:.3e}")]
    PairingFailure { a: f64, b: f64, gap: f64 },

    #[error("Williamson decomposition failed verification: {check} residual {residual:.3e} exceeds {tolerance:.1e}")]
    WilliamsonFailure {
        check: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("compound order {k} out of range 1..={dim}")]
    CompoundOrderOutOfRange { k: usize, dim: usize },

    #[error("vector entries must be strictly positive (found {0:.6e})")]
    NotPositiveVector(f64),

    #[error("weights must be positive and sum to 1 (sum deviation {0:.3e})")]
    BadWeights(f64),

    #[error("measure must have at least one atom")]
    EmptyMeasure,

    #[error("product support size {size} exceeds cap {cap}")]
    ProductCapExceeded { size: usize, cap: usize },

    #[error("transport solver stalled after {0} pivots")]
    TransportStall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
