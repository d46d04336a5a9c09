//! Exact-arithmetic engine for two-term integer recurrences, generalized
//! Fibonacci-Lucas numbers and quaternions, truncated generating functions,
//! quaternion-order lattices, and the derived 2x2 block codec.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! identity checkers compare both sides exactly and report, never round.

pub mod coding;
pub mod error;
pub mod exact;
pub mod orders;
pub mod quaternions;
pub mod report;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use exact::{Coeff, Integer, Polynomial, QuadExtElem, Rational};
pub use report::IdentityReport;
