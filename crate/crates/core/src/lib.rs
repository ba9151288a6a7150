//! Exact counting of barred preferential arrangements.
//!
//! A preferential arrangement of `{1..n}` is an ordered set partition: a
//! partition into nonempty blocks together with a linear order on the blocks.
//! Inserting `k` bars among the blocks splits an arrangement into `k + 1`
//! ordered sections; sections may be declared *free* (any number of blocks)
//! or *restricted* (at most one block).
//!
//! The crate computes the resulting counting sequences by several independent
//! routes (closed forms, recurrences, exponential-generating-function
//! coefficients, exhaustive enumeration) entirely in exact arithmetic, and
//! machine-checks the identities relating the routes over configurable
//! parameter ranges.

pub mod counting;
pub mod egf;
pub mod enumerate;
pub mod exact;
pub mod profile;
pub mod verify;

pub use exact::{Count, Rational};
pub use profile::{RestrictionProfile, SectionKind};
