//! Exact homology of the doubly weighted Lie superalgebra of polynomial vector
//! fields and differential forms on `ℝ^n`.
//!
//! * [`algebra`]: generators, elements, the super bracket.
//! * [`chain`]: canonical wedge words, chains, weighted basis enumeration.
//! * [`homology`]: the boundary operator, exact ranks, Betti numbers and the
//!   structural verifiers.
//! * [`oracle`]: brute-force cross-checks.
//! * [`report`]: serialization and range parsing used by the CLI.

pub mod algebra;
pub mod chain;
pub mod homology;
pub mod oracle;
pub mod report;
