//! Rational generating functions recovered from counts, and their growth.

mod fit;
mod growth;
mod roots;
mod zeta;

use thiserror::Error;

use crate::polyrat::PolyError;

pub use fit::{fit_recurrence, parse_counts, Recurrence};
pub use growth::{default_tolerance, growth_rate, GrowthAnalysis, GrowthKind, DEFAULT_TOL};
pub use roots::SturmChain;
pub use zeta::{rate_from_zeta, zeta_reduce};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{points} terms cannot certify a recurrence of order {order} (need {needed})")]
    InsufficientData { order: usize, points: usize, needed: usize },
    #[error("cannot parse counts: {0}")]
    Parse(String),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(String),
    #[error("smallest-modulus pole is not real and positive")]
    NonRealDominantPole,
    #[error("no pole inside the unit disk and poles off the unit circle")]
    UnsupportedPoles,
    #[error("polynomial is not self-reciprocal of even degree")]
    NotSelfReciprocal,
    #[error("no real root with |zeta| >= 2")]
    NoRealZetaRoot,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
