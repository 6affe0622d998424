//! The boundary operator, exact ranks, Betti numbers and claim verifiers.

mod boundary;
mod compact;
mod lemma;
mod matrix;
mod report;
mod verify;

use thiserror::Error;

use crate::chain::ChainError;

pub use boundary::{boundary, boundary_word, boundary_word_cached, BracketCache};
pub use lemma::{
    a1_operator, a1_term, boundary_prime, diagonal_ranks, ii_boundary_expansion, lemma_rank_pairs, lemma_table,
    split_word, verify_lemma_ranks, verify_theorem5, LemmaRow, LEMMA_TABLE,
};
pub use matrix::{boundary_matrix, matrix_of, rank, ExactMatrix};
pub use report::{betti, HomologyReport, HomologyRow};
pub use verify::{
    generators_up_to, verify_acyclicity, verify_d_squared, verify_euler, verify_jacobi, verify_prop1,
    verify_theorem2, Cell, Counterexample, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("h = {h} lies on the diagonal h = -w for w = {w}")]
    OnDiagonal { w: u32, h: i64 },
    #[error("{0} is not a function")]
    KindViolation(String),
    #[error("{0} is not a word on the line")]
    NotOnLine(String),
    #[error("chain term {word} has weight ({w}, {h}), expected (2, -2)")]
    WeightMismatch { word: String, w: u32, h: i64 },
    #[error(transparent)]
    Chain(#[from] ChainError),
}
