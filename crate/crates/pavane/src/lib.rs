//! Pattern-avoidance toolkit for permutations.
//!
//! The crate enumerates permutations avoiding several structured pattern
//! families (last-entry-small families `A:k` and `B:k`, monotone classes,
//! and arbitrary explicit sets), implements two explicit bijections between
//! such classes, computes exact rational generating-function data including
//! a closed form for the `A:4` class, bounds counts by binomial sums, and
//! guesses algebraic relations satisfied by counting sequences using exact
//! integer linear algebra.

pub mod analysis;
pub mod bijections;
pub mod cache;
pub mod containment;
pub mod enumerate;
pub mod error;
mod linalg;
pub mod perm;
pub mod series;

pub use cache::CountCache;
pub use enumerate::{count_avoiders, count_sequence, enumerate_avoiders, CountSequence};
pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation};
