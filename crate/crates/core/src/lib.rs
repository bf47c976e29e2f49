//! Exact octonion arithmetic for the Leech lattice and the octonionic
//! projective plane: the 98280 short-vector pairs in RP²³, the 819-point
//! orbit in OP², and the reflection groups acting on both.

pub mod acceptance;
pub mod action;
pub mod albert;
pub mod design;
pub mod linalg;
pub mod lattice;
pub mod octonion;
pub mod permgroup;
pub mod rational;

pub use lattice::leech::{LeechVec, OctVec3};
pub use octonion::{BasisIndex, Octonion};
pub use rational::Rational;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported lattice {0}")]
    UnsupportedLattice(String),
    #[error("zero vector has no canonical pair")]
    ZeroVector,
    #[error("components do not lie in a common associative subalgebra: {0}")]
    NotAssociative(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("closure violation: {0}")]
    Closure(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
