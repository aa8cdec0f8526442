//! Regularised I-functions of weighted hypersurfaces, the associated
//! hypergeometric operator and its reduction, the coefficient identity
//! behind the period computation, and the BCM hypergeometric data.

mod bcm;
mod coefficients;
mod hypersurface;
mod operator;

pub use bcm::{bcm_data, m_alpha_product, multiset_identity_check, multiset_identity_check_with, BcmData};
pub use coefficients::{
    coefficient_identity_batch, coefficient_identity_check, coefficient_identity_sides, expansion_coefficient,
};
pub use hypersurface::{
    ifun_coefficient, ifun_coefficients, jk_hypersurface, jk_singular_value_closed_form, singular_value,
    IfunCoefficients, WeightedHypersurface,
};
pub use operator::{build_operator, p0_value, p1_value, recurrence_check, HypergeomOperator, RecurrenceReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergeomError {
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
    #[error("weights must be positive and nonempty")]
    InvalidWeights,
    #[error("degree must be positive")]
    InvalidDegree,
    #[error("jmax must be at least 1")]
    InvalidJmax,
}

pub(crate) fn check_k(k: i64) -> Result<u64, HypergeomError> {
    if k >= 1 {
        Ok(k as u64)
    } else {
        Err(HypergeomError::InvalidK(k))
    }
}
