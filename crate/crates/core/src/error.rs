//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coefficients must be finite")]
    NonFiniteCoefficients,

    #[error("point is not on the unit sphere: |norm - 1| = {deviation:e}")]
    NotOnSphere { deviation: f64 },

    #[error("matrix is not orthogonal: |Q^T Q - I| = {deviation:e}")]
    NotOrthogonal { deviation: f64 },

    #[error("vectors are not orthonormal: |<v1, v2>| = {inner:e}")]
    NotOrthonormalPair { inner: f64 },

    #[error("parameter {name} = {value} outside the valid domain {domain}")]
    OutsideDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("cubic is not in e1-face form (unit value and critical at e1)")]
    NotInFaceForm,

    #[error("cubic lies outside the unit norm ball (norm = {norm})")]
    OutsideBall { norm: f64 },

    #[error("cubic is not on the boundary of the unit norm ball (norm = {norm})")]
    NotBoundary { norm: f64 },

    #[error("barycentric vector has a near-zero component z[{index}] = {value:e}")]
    ZeroBarycentricComponent { index: usize, value: f64 },

    #[error("barycentric vector components must sum to 1 (sum = {sum})")]
    BarycentricSum { sum: f64 },

    #[error("matrix is not a rank-3 positive semidefinite Gramian (eigenvalues {eigenvalues:?})")]
    NotRank3Gramian { eigenvalues: [f64; 4] },

    #[error("quadruple of points is affinely degenerate (determinant {det:e})")]
    DegenerateQuadruple { det: f64 },

    #[error("points must be pairwise distinct")]
    CoincidentPoints,

    #[error("census of critical points is incomplete: {reason}")]
    IncompleteCensus { reason: String },

    #[error("maxima list is not a verified set of global maxima: {reason}")]
    UnverifiedMaxima { reason: String },

    #[error("malformed cubic JSON: {reason}")]
    MalformedJson { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
