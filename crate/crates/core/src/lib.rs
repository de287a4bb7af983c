#![doc = include_str!("../../../README.md")]

pub mod algebra;
pub mod error;
pub mod elliptic;
pub mod function_field;
pub mod io;
pub mod models;
pub mod quartic;
pub mod quotient_tables;

pub use error::{Error, Result};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Univariate polynomials over the rationals.
pub type RationalPolynomial = algebra::Polynomial<Rational>;
/// Univariate polynomials over a multi-quadratic field.
pub type FieldPolynomial = algebra::Polynomial<algebra::FieldElement>;
/// Polynomials in `x` whose coefficients are rational functions of `t`.
pub type FunctionFieldPolynomial = algebra::Polynomial<function_field::RationalFunction>;
/// Matrices with exact rational entries.
pub type RationalMatrix = algebra::Matrix<Rational>;
