use crate::face::Vertex;

/// Errors produced by the library.
///
/// Search routines additionally use [`Error::Exhausted`] to report that a
/// configured node budget ran out before an answer was found; it is a
/// non-answer, not a verdict.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("vertex id {0} exceeds the supported universe (ids must be <= 63)")]
    VertexOutOfRange(u64),
    #[error("complex is not pure")]
    NotPure,
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(Vertex),
    #[error("vertex {0} appears more than once")]
    Duplicate(Vertex),
    #[error("order is not a bijection onto positions 1..=n")]
    NotABijection,
    #[error("order domain does not match the complex vertex set")]
    DomainMismatch,
    #[error("order is not valid for this complex")]
    InvalidOrder,
    #[error("dimension {0} out of range for this complex")]
    DimensionOutOfRange(i32),
    #[error("invalid dimensions: need 0 <= d < n")]
    InvalidDimensions,
    #[error("sequence is not a permutation of the facets")]
    NotAPermutation,
    #[error("sequence is not a shelling")]
    NotAShelling,
    #[error("certificate does not match the complex")]
    InvalidCertificate,
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("family requires dimension >= 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("too many facets for brute force ({0} > {1})")]
    TooManyFacets(usize, usize),
    #[error("requested size exceeds the configured bound")]
    BoundExceeded,
    #[error("vertex set is not contained in {{1..n}} for n = {0}")]
    UniverseMismatch(u32),
    #[error("search budget exhausted after {visited} nodes")]
    Exhausted { visited: u64 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
