//! Exact integer polynomials, rational functions and linear algebra over Q(z).
//!
//! Nothing in this module touches floating point except the explicit
//! `eval_f64` helpers used by the numeric root finders downstream.

mod linsolve;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use linsolve::solve_linear_system;
pub use num_rational::BigRational as Rational;
pub use poly::{poly_arith, serialize_integers, PolyOp, Polynomial};
pub use ratfunc::{ratfunc_arith, series_expand, RatOp, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at z = 0; no power series exists")]
    PoleAtOrigin,
    #[error("series coefficient {index} is not an integer")]
    NonIntegerCoefficient { index: usize },
    #[error("dimension mismatch: expected {rows} entries, found {cols}")]
    DimensionMismatch { rows: usize, cols: usize },
    #[error("coefficient matrix is singular")]
    SingularMatrix,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
