//! Exact polyhedral engine for the toric ambient space of the threefold
//! family: the polytope `P`, the shifted family `P(ε)`, the thresholds where
//! `P(ε)` changes shape, the normal fans between them, and the lattice
//! relations on the hyperplane `C₀` of the final fan.
//!
//! Everything is exact rational arithmetic. Vertices are found by solving
//! every square subsystem of the inequalities.

mod jk;
pub mod linalg;
mod mmp;
mod polytope;

pub use jk::{
    epsilon_polytope, epsilon_polytope_in, expected_jk_vertices, family_facets, jk_facets, jk_polytope, rho9, rho_tau2,
    shift_facets, FacetFamily,
};
pub use mmp::{
    expected_thresholds, final_fan_check, final_fan_report, mmp_run, mmp_thresholds, mmp_thresholds_in,
    quotient_relations_check, stated_dual_basis, FinalFanReport, IntervalFan, MMPRun, RelationsReport, FINAL_FAN_CONES,
    FINAL_FAN_RAYS, STATED_MONOMIALS,
};
pub use polytope::{normal_fan, vertices_from_facets, Facet, Fan, LatticePolytope, Point, Ray, MAX_DIM, MAX_FACETS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
    #[error("epsilon must lie in [0, 1), got {0}")]
    EpsilonOutOfRange(String),
    #[error("normal of length {got} in ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("enumeration limited to dimension <= {MAX_DIM} and <= {MAX_FACETS} facets, got {dim} and {facets}")]
    TooLarge { dim: usize, facets: usize },
    #[error("unbounded: recession direction {direction:?}")]
    Unbounded { direction: Vec<i64> },
    #[error("{0}")]
    MissingData(String),
}

pub(crate) fn check_k(k: i64) -> Result<(), ToricError> {
    if k >= 1 {
        Ok(())
    } else {
        Err(ToricError::InvalidK(k))
    }
}
