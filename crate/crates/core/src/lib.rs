//! Intersecting families of multisets.
//!
//! Multiset algebra and enumeration, the support-preserving bijection between
//! k-subsets of `[m + k - 1]` and k-multisets of `[m]`, constructors for the
//! classical extremal families, kernel-guided down-compression, and exact
//! branch-and-bound searches over disjointness graphs.

pub mod bijection;
pub mod compression;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod family;
pub mod format;
pub mod multiset;
pub mod search;
pub mod suite;

pub use bijection::BijectionContext;
pub use count::{binomial, multichoose, ExactInt};
pub use enumerate::{enumerate_k_multisets, enumerate_k_subsets};
pub use error::{Error, Result};
pub use family::{Family, Kind};
pub use multiset::{KSet, Multiset};

/// Default counting width.
pub type Count = u64;
/// Wide counting width for larger tables.
pub type WideCount = u128;
/// Unbounded counting.
pub type BigCount = num_bigint::BigUint;
/// Exact rational used for threshold comparisons.
pub type Rational = num_rational::Ratio<i64>;
