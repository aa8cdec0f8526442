//! Periods `π_k(α) = (1/2πi)∮ t^{2k} dt / y` of the hyperelliptic pencil,
//! computed by the trapezoid rule on a circle `|t| = ρ` inside the annulus
//! separating the inner and middle branch points, and compared with the
//! regularised I-function series `Î_k(α) = Σ c_j α^j`.

mod contour;
mod quadrature;
mod series;

pub use contour::{contour_radius, contour_radius_with_exponent, exponent_band, midpoint_exponent, ContourSpec};
pub use quadrature::{
    main_theorem_check, period_quadrature, Branch, PeriodResult, Quadrature, QuadratureOptions, DEFAULT_PRECISION,
    DEFAULT_TOL, MAX_NODES, MIN_NODES,
};
pub use series::{alpha_limit, expansion_value, series_value, MAX_SERIES_TERMS};

use exactcore::PrecisionError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodsError {
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("|alpha| = {abs} is outside the admissible range (limit {limit})")]
    AlphaOutOfRange { abs: String, limit: String },
    #[error("contour exponent {0} is outside the open band (1/(2k+1), 2/(4k+1))")]
    ExponentOutOfBand(String),
    #[error("branch validity violated: radicand {which} leaves |z-1| < 1 at node {node} of {n}")]
    BranchValidity { which: u8, node: usize, n: usize },
    #[error("no convergence: N = {n} exceeds the node cap, last estimate {estimate}")]
    NoConvergence { n: usize, estimate: String },
    #[error("series did not reach tolerance within {0} terms")]
    SeriesTruncated(usize),
    #[error("quadrature needs at least {min} bits, got {got}")]
    LowPrecision { min: usize, got: usize },
    #[error(transparent)]
    Precision(#[from] PrecisionError),
}

pub(crate) fn check_k(k: i64) -> Result<u64, PeriodsError> {
    if k >= 1 {
        Ok(k as u64)
    } else {
        Err(PeriodsError::InvalidK(k))
    }
}
