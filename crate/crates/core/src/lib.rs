//! Numerical companion for subconvexity estimates of twisted GL(2) L-functions.
//!
//! Exact character sums, summation formulae and central values `L(f x chi, 1/2)` at desk scale.

pub mod characters;
pub mod charsums;
pub mod error;
pub mod forms;
pub mod lvalue;
pub mod modarith;
pub mod phase;
pub mod transforms;

pub use error::{Error, Result};

/// Default seed for every randomized sweep.
pub const DEFAULT_SEED: u64 = 0x5EED;
