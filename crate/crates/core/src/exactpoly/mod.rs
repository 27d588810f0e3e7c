//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;
mod parse;
mod poly;
mod rational;
mod ring;

pub use monomial::Monomial;
pub use parse::{parse_poly, tokenize_ident};
pub use poly::{Bindings, Poly};
pub use rational::{int, parse_rational, ratio, render_rational, Rational};
pub use ring::{MonomialOrder, PolyRing};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomialDegree,
    #[error("variable `{0}` has conflicting weights")]
    WeightMismatch(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has weight 0")]
    ZeroWeight(String),
}
