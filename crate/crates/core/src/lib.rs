//! Riemannian geometry of symmetric positive definite matrices at desk
//! scale: Karcher (Cartan) barycenters of finitely supported measures,
//! the Riemannian trace and Thompson metrics, symplectic eigenvalues and
//! the Williamson decomposition, log-majorization predicates, and exact
//! discrete optimal transport for Wasserstein-1 distances over either
//! cone metric.
//!
//! Everything is a pure function on immutable values; there is no shared
//! mutable state, so all operations are safe to call concurrently.
//!
//! Exchange formats: matrices serialize as `{"dim": n, "data": [row-major
//! reals]}`, positive vectors as `{"data": [...]}` (sorted on read),
//! measures as `{"weights": [...], "atoms": [...]}`, and transport
//! solutions as `{"value": x, "mass": [[...]]}`. Floats are written in
//! the shortest form that parses back bit-exactly.

pub mod barycenter;
pub mod eig;
pub mod error;
pub mod majorization;
pub mod matrix;
pub mod measure;
pub mod random;
pub mod spd;
pub mod symplectic;
pub mod transport;

pub use barycenter::{
    arithmetic_mean, geometric_integral, harmonic_mean, karcher_mean, karcher_mean_with,
    karcher_residual, log_euclidean_mean, power_pushforward, product_barycenter_measure,
    product_barycenter_measure_with, pushforward_eigen, vector_barycenter, GeometricMeanable,
    KarcherResult, KARCHER_MAX_ITER, KARCHER_TOL, PRODUCT_SUPPORT_CAP,
};
pub use eig::EigDecomposition;
pub use error::{Error, Result};
pub use majorization::{
    additive_majorizes, log_majorizes, vector_geometric_mean, weak_log_majorizes,
    MajorizationCheck, OrderedPositiveVector,
};
pub use matrix::Matrix;
pub use measure::{DiscreteMeasure, HasDim};
pub use spd::{SpdMatrix, SymMatrix};
pub use symplectic::{
    compound_matrix, extended_symplectic_map, standard_j, symplectic_eigenvalues,
    symplectic_prefix_product, top_symplectic_bound_holds, williamson, SymplecticSpectrum,
    WilliamsonDecomposition,
};
pub use transport::{
    wasserstein1_simplex, wasserstein1_spd, wasserstein1_vectors, wasserstein1_with,
    MatrixGround, TransportPlan, TransportSolution, VectorGround,
};
