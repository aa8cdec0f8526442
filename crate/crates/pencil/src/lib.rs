//! The hyperelliptic pencil `α·y² = h_{k,α}(t)`: its branch polynomial,
//! numerically located and classified branch points, the `δ₁·δ₂`
//! factorization in the parameter `a = 1/α`, and quadratic-character point
//! counts over prime fields.

mod branch;
mod charsum;
mod roots;
mod univariate;

pub use branch::{
    branch_coeffs_complex, branch_polynomial, branch_polynomial_symbolic, delta_branch_identity, delta_polys, genus,
    DeltaIdentityReport, DeltaPolys,
};
pub use charsum::{charsum_y, charsum_y_brute, weil_bound_holds, CharSum};
pub use roots::{
    aberth, assign_bands, branch_points, classify_roots, find_branch_roots, horner, root_structure_check, AberthOutput,
    BranchData, RootClass, RootSet, RootStructureReport, CLASSIFICATION_ALPHA_LIMIT,
};
pub use univariate::{squarefree_rational, RationalUniPoly};

use exactcore::{PolyError, PrecisionError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PencilError {
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
    #[error("alpha must be nonzero")]
    AlphaZero,
    #[error("alpha equals the singular value; the fibre is singular")]
    AlphaCritical,
    #[error("classification unavailable: {0}")]
    ClassificationUnavailable(String),
    #[error("root finder did not converge after {iterations} iterations (max correction 2^{log2_step})")]
    NoConvergence { iterations: usize, log2_step: i64 },
    #[error("q = {0} is not an odd prime")]
    BadModulus(u64),
    #[error("bad reduction mod {q}: {reason}")]
    BadReduction { q: u64, reason: String },
    #[error(transparent)]
    Precision(#[from] PrecisionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub(crate) fn check_k(k: i64) -> Result<u64, PencilError> {
    if k >= 1 {
        Ok(k as u64)
    } else {
        Err(PencilError::InvalidK(k))
    }
}
