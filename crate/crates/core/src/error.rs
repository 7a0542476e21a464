use thiserror::Error;

use crate::LatticePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty point set")]
    EmptyInput,
    #[error("points must have at least one coordinate")]
    ZeroDimension,
    #[error("points span an affine subspace of dimension {affine_dim} in ambient dimension {dim}")]
    NotFullDimensional { dim: usize, affine_dim: usize },
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("polar dual is not integral: facet {normal} <= {offset} has offset other than 1")]
    NotIntegral {
        normal: LatticePoint,
        offset: num_bigint::BigInt,
    },
    #[error("polytope is not a simplex ({vertices} vertices in dimension {dim})")]
    NotASimplex { dim: usize, vertices: usize },
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("dimension {got} is too small, need at least {min}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: num_bigint::BigInt },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
