//! Exact arithmetic: rationals, dense matrices over ℚ, Smith normal form,
//! sparse multivariate polynomials, resultants and rational root finding.
//!
//! Nothing in this module rounds. Integer matrices are rational matrices whose
//! entries all have denominator one.

mod matrix;
mod parse;
mod poly;
mod rational;
mod snf;
mod univariate;

pub use matrix::ExactMatrix;
pub use parse::parse_poly;
pub use poly::{resultant, MPoly};
pub use rational::{int, parse_rational, rat, Rational};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use univariate::{factor_integer, rational_roots, squarefree_part, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("entry ({row}, {col}) is not an integer")]
    NotInteger { row: usize, col: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable `{0}` does not occur in the polynomials")]
    UnknownVariable(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
}
