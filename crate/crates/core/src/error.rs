use thiserror::Error;

use crate::vector::IntVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("vector {0} has a negative coordinate")]
    NotInNaturals(IntVector),

    #[error("cone is not simplicial: {extremal} extremal rays for a span of rank {rank}")]
    NotSimplicial { extremal: usize, rank: usize },

    #[error("generators span a rank {rank} lattice inside dimension {dim}; re-embed first")]
    NotFullRank { rank: usize, dim: usize },

    #[error("{0} does not lie on a ray of the cone, or the rays are not covered exactly once")]
    RayMismatch(IntVector),

    #[error("{0} is not in the cone")]
    NotInCone(IntVector),

    #[error("complement is not closed: gap {gap} = {x} + {y} with both summands in the semigroup")]
    NotClosed {
        gap: IntVector,
        x: IntVector,
        y: IntVector,
    },

    #[error("not a multset: {0}")]
    NotMultset(String),

    #[error("not an antichain: {0} <= {1} in the cone order")]
    NotAntichain(IntVector, IntVector),

    #[error("the zero vector is not allowed here")]
    ZeroNotAllowed,

    #[error("no depth region up to k = {k_max} lies inside the semigroup; it may not be a C-semigroup")]
    NotVerified { k_max: usize },

    #[error("every gap is pseudo-Frobenius; no witness exists")]
    PfEqualsGaps,

    #[error("{0} is not a minimal element of the semigroup")]
    NotMinimalElement(IntVector),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("Betti relation does not divide exactly: {numerator} / {denominator}")]
    NonIntegralRelation { numerator: i64, denominator: i64 },

    #[error("resource limit of {limit} binomials exceeded ({basis_size} in basis, {pending} pairs pending)")]
    ResourceLimit {
        limit: usize,
        basis_size: usize,
        pending: usize,
    },

    #[error("{0} is not in both parts of the gluing")]
    NotInBoth(IntVector),

    #[error("lattice intersection is spanned by {actual:?}, not by the gluing element")]
    LatticeMismatch { actual: Vec<IntVector> },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("instance file, line {line} column {column}: {message}")]
    Schema {
        message: String,
        line: usize,
        column: usize,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("integer overflow")]
    Overflow,
}
