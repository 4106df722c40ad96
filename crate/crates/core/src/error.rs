//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vector that must be nonzero (e.g. a ray generator) was zero.
    #[error("zero vector has no primitive representative")]
    ZeroVector,

    /// Structural defect in a fan: bad dimensions, out-of-range cone
    /// indices, duplicate rays, or a non-simplicial maximal cone.
    #[error("malformed fan: {0}")]
    MalformedFan(String),

    /// The origin is not an interior point of the polytope, so the polar
    /// dual is unbounded.
    #[error("origin is not interior to the polytope")]
    OriginNotInterior,

    /// A polytope vertex that must be a lattice point is fractional.
    #[error("non-integral vertex: {0}")]
    NonIntegralVertex(String),

    /// A facet of the dual polytope is empty or of the wrong dimension,
    /// or the PL function is not strictly convex so the facet/ray
    /// correspondence breaks down.
    #[error("degenerate facet: {0}")]
    DegenerateFacet(String),

    /// A monodromy loop whose cells do not satisfy the containment
    /// relations required for transport.
    #[error("invalid monodromy loop: {0}")]
    InvalidLoop(String),

    /// A cone (or vertex star) whose generators do not form a lattice
    /// basis where one is required.
    #[error("not unimodular: {0}")]
    NotUnimodular(String),

    /// A multiset or class of cohomological degree outside 0..=d.
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),

    /// A monodromy matrix expected to be integral has a non-integral
    /// entry.
    #[error("non-integral monodromy: {0}")]
    NonIntegralMonodromy(String),

    /// A computed subspace has a dimension other than the one forced by
    /// the Hodge-type accounting.
    #[error("subspace dimension mismatch: {0}")]
    SubspaceDimMismatch(String),

    /// A set of vectors expected to span (or to be solvable against)
    /// failed to do so.
    #[error("span failure: {0}")]
    SpanFailure(String),

    /// A cell of unexpected dimension appeared where a specific
    /// dimension is forced.
    #[error("unexpected cell dimension: {0}")]
    UnexpectedCellDim(String),

    /// An index or filtration level outside its admissible range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A piecewise linear function violating a convexity precondition.
    #[error("convexity violation: {0}")]
    NotConvex(String),

    /// A Chern class that must vanish for the requested construction.
    #[error("nonvanishing Chern class: {0}")]
    NonVanishingChern(String),
}

pub type Result<T> = std::result::Result<T, Error>;
