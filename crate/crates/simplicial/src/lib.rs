//! Exact combinatorics of small pure simplicial complexes.
//!
//! The crate answers, without approximation and with checkable witnesses:
//!
//! - whether a vertex order is unit interval, interval, or semi-closed, and
//!   how many orders of each kind a complex admits;
//! - whether a facet sequence is a shelling, whether a vertex order induces a
//!   lexicographic shelling, and how many orders do;
//! - whether a complex is vertex decomposable, with shedding certificates
//!   that convert into shellings;
//! - whether a shelling extends to a shelling of the full skeleton of the
//!   simplex on `{1, …, n}`.
//!
//! Faces live in a fixed 64-bit universe (vertex ids `0..=63`); constructors
//! fail loudly beyond it. All values are immutable after construction, so
//! anything here may be shared across threads; the counting searches split
//! work internally via rayon and their results are schedule-independent.

mod complex;
mod error;
mod face;
mod io;
mod search;

pub mod corpus;
pub mod decompose;
pub mod order;
pub mod shelling;

pub use complex::{complete_skeleton, Complex, DualGraph};
pub use error::{Error, Result};
pub use face::{Face, Vertex, MAX_VERTEX};
pub use io::{parse_complex, read_complex, write_complex};
pub use order::{OrderCheck, OrderClass, OrderViolation, VertexOrder};
pub use search::{Progress, SearchOpts};
pub use shelling::{
    FacetSequence, ShellingCertificate, ShellingFailure, ShellingOutcome,
};
