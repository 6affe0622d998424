//! Wedge words with Koszul signs, chains, and the weighted chain-space bases.

pub(crate) mod basis;
#[allow(clippy::module_inception)]
mod chain;
mod closed_form;
mod text;
mod word;

pub use basis::{enumerate_basis, m_range, max_chain_length, ChainBasis, ComplexSlice};
pub use chain::Chain;
pub use closed_form::{base_basis, closed_form_basis, ii_multiply, ones, ChainError, BASE_COMPLEX};
pub use text::{format_chain, format_word, parse_chain, parse_word};
pub use word::{canonicalize, swap_sign, WedgeWord};
