//! Exact scalars, generators, elements and the super bracket.

mod calculus;
mod element;
mod generator;
mod monomial;
pub(crate) mod text;

use thiserror::Error;

pub use calculus::{
    bracket, bracket_generators, euler_field, exterior_derivative, interior_product,
    lie_derivative, lie_derivative_coordinates, wedge_forms,
};
pub(crate) use calculus::bracket_generators_into;
pub use element::Element;
pub use generator::{double_weight, DoubleWeight, Generator, Kind};
pub use monomial::Monomial;
pub use text::{format_element, parse_element, ParseError, ParseErrorKind};

/// Reduced arbitrary-precision fraction with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected a form, found {0}")]
    NotAForm(String),
    #[error("expected a vector field, found {0}")]
    NotAVectorField(String),
}
