use exactcore::{BigComplex, ExactScalar, Real};

use crate::{check_k, PeriodsError};

/// The circle `|t| = ρ` with base point `t₀ = ρ`, sampled at `N` nodes.
#[derive(Clone, Debug)]
pub struct ContourSpec {
    pub radius: Real,
    pub exponent: ExactScalar,
    pub base_point: BigComplex,
    pub sample_count: usize,
    pub precision_bits: usize,
}

/// `(1/(2k+1), 2/(4k+1))`: for `r < 1`, `ρ = r^e` lies strictly between
/// `r^{2/(4k+1)}` and `r^{1/(2k+1)}` exactly when `e` is in this band.
pub fn exponent_band(k: i64) -> Result<(ExactScalar, ExactScalar), PeriodsError> {
    let k = check_k(k)? as i64;
    Ok((ExactScalar::new(1, 2 * k + 1), ExactScalar::new(2, 4 * k + 1)))
}

/// `(2/(4k+1) + 1/(2k+1))/2`.
pub fn midpoint_exponent(k: i64) -> Result<ExactScalar, PeriodsError> {
    let (lo, hi) = exponent_band(k)?;
    Ok((lo + hi) * ExactScalar::new(1, 2))
}

pub fn contour_radius(k: i64, alpha_abs: &Real) -> Result<Real, PeriodsError> {
    contour_radius_with_exponent(k, alpha_abs, &midpoint_exponent(k)?)
}

/// `alpha_abs^e` for `e` strictly inside the exponent band.
pub fn contour_radius_with_exponent(k: i64, alpha_abs: &Real, e: &ExactScalar) -> Result<Real, PeriodsError> {
    let (lo, hi) = exponent_band(k)?;
    if !(&lo < e && e < &hi) {
        return Err(PeriodsError::ExponentOutOfBand(e.to_string()));
    }
    let prec = alpha_abs.prec();
    if alpha_abs.is_negative() || alpha_abs.is_zero() || alpha_abs >= &Real::one(prec) {
        return Err(PeriodsError::AlphaOutOfRange {
            abs: alpha_abs.to_sci(6),
            limit: "1".into(),
        });
    }
    Ok(alpha_abs.powf(&Real::from_scalar(e, prec)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_values() {
        assert_eq!(midpoint_exponent(1).unwrap(), ExactScalar::new(11, 30));
        assert_eq!(midpoint_exponent(2).unwrap(), ExactScalar::new(19, 90));
    }

    #[test]
    fn radius_k1() {
        let r = Real::from_f64(1e-6, 128);
        let rho = contour_radius(1, &r).unwrap().to_f64();
        assert!((rho / 1e-6f64.powf(11.0 / 30.0) - 1.0).abs() < 1e-12);
        assert!(1e-6f64.powf(0.4) < rho && rho < 1e-6f64.powf(1.0 / 3.0));
        // 10^{-2.2} ≈ 6.31e-3
        assert!((rho - 6.3096e-3).abs() < 1e-6);
    }

    #[test]
    fn rejects_out_of_band() {
        let r = Real::from_f64(1e-6, 128);
        assert!(contour_radius_with_exponent(1, &r, &ExactScalar::new(1, 3)).is_err());
        assert!(contour_radius(1, &Real::one(128)).is_err());
    }
}
