//! The threefold family `W_k ⊂ T⁴ × C^×`, its del Pezzo fibration chart
//! `Ŵ`, the conic bundle model `W′`, and torus point counts over `F_q`.
//!
//! Identities with rational-function coefficients are checked by seeded
//! exact evaluation; fibre geometry is checked numerically at a working
//! precision with tolerance `2^{-prec/4}`.

mod count;
mod equations;
mod fiber;

pub use count::{count_w, CountMethod, BRUTE_FORCE_MAX_Q};
pub use equations::{
    chart_vars, conic_bundle_check, conic_bundle_check_with, conic_bundle_spec, coordchange_check,
    coordchange_check_with, substitution_check, torus_vars, w_equation, ConicBundleReport, ConicBundleSpec, ConicImage,
    CoordChangeReport, EquationForm, NewyVariant, SubstitutionReport,
};
pub use fiber::{
    cover_fiber_sizes, delta1_roots, delta2_roots, fiber_special_points, lines_on_fiber, n_equation, n_gradient,
    what_equation, what_gradient, FiberGeometry, FiberSelector, Frame, LineCheck, LinesReport, SpecialPoint,
};

use exactcore::{IdentityError, PolyError, PrecisionError};
use pencil::PencilError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThreefoldError {
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
    #[error("the parameter a must be nonzero")]
    AZero,
    #[error("q = {0} is not an odd prime")]
    BadModulus(u64),
    #[error("bad reduction mod {q}: {reason}")]
    BadReduction { q: u64, reason: String },
    #[error("brute-force counting is limited to q <= {max}, got {q}")]
    BruteTooLarge { q: u64, max: u64 },
    #[error("t is a critical value: {0}")]
    CriticalFibre(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Precision(#[from] PrecisionError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

pub(crate) fn check_k(k: i64) -> Result<u64, ThreefoldError> {
    if k >= 1 {
        Ok(k as u64)
    } else {
        Err(ThreefoldError::InvalidK(k))
    }
}
