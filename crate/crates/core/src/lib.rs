//! Exact machinery for finite group actions on algebraic tori of dimension
//! up to three: integer linear algebra, affine torus automorphism groups,
//! toric fans and their fixed-point conditions, lattice cohomology, the
//! monomial-unit obstruction class, and the resulting classification
//! verdicts (fixed points, unirationality, stable linearizability).
//!
//! All arithmetic is exact. Integers are arbitrary precision, torsion torus
//! coordinates live in Q/Z as reduced fractions, and every verdict is backed
//! by a witness or a finite certificate.

pub mod exact;

pub mod affine;
pub mod classifier;
pub mod cohomology;
pub mod fan;
pub mod glattice;
pub mod obstruction;

pub mod cli;

use thiserror::Error;

/// Crate-wide error type. Mathematically negative verdicts (no fixed point,
/// obstruction nonvanishing, not conjugate) are ordinary return values, not
/// errors; these variants are reserved for contract violations and caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("matrix dimensions incompatible: {0}")]
    DimensionMismatch(String),
    #[error("conjugacy search inconclusive for a subgroup of order {order}")]
    InconclusiveConjugacy { order: usize },
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("ray lies outside the support of the fan")]
    RayOutsideSupport,
    #[error("cone is not stabilized by the group")]
    ConeNotStabilized,
    #[error("fan is not invariant under the group")]
    FanNotInvariant,
    #[error("group mismatch between modules")]
    GroupMismatch,
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("cohomology degree out of range: {0}")]
    DegreeOutOfRange(usize),
    #[error("internal comparison-map conversion failed: {0}")]
    ConversionFailed(String),
    #[error("section does not split the Picard projection")]
    SectionInvalid,
    #[error("group is not of the required Klein-type form: {0}")]
    NotK9(String),
    #[error("torus part is not cyclic")]
    NonCyclicTorusPart,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
