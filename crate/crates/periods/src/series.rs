use exactcore::{check_precision, BigComplex, Real};
use hypergeom::{expansion_coefficient, jk_hypersurface, jk_singular_value_closed_form, IfunCoefficients};

use crate::{check_k, PeriodsError};

pub const MAX_SERIES_TERMS: usize = 100_000;

/// `α_{k,0}` rounded to `prec` bits.
pub fn alpha_limit(k: i64, prec: usize) -> Result<Real, PeriodsError> {
    check_k(k)?;
    Ok(Real::from_scalar(
        &jk_singular_value_closed_form(k).expect("k validated"),
        prec,
    ))
}

/// `Î_k(α)` truncated once the geometric tail bound `|term|·r/(1−r)`, with
/// `r` the observed term ratio, falls below `tol·|sum|`. Returns the value and
/// the number of terms used.
pub fn series_value(k: i64, alpha: &BigComplex, tol: &Real) -> Result<(BigComplex, usize), PeriodsError> {
    check_k(k)?;
    let prec = check_precision(alpha.prec())?;
    let limit = alpha_limit(k, prec)?;
    if alpha.abs() >= limit {
        return Err(PeriodsError::AlphaOutOfRange {
            abs: alpha.abs().to_sci(6),
            limit: limit.to_sci(6),
        });
    }
    let one = BigComplex::one(prec);
    if alpha.is_zero() {
        return Ok((one, 1));
    }
    let h = jk_hypersurface(k).expect("k validated");
    let mut coeffs = IfunCoefficients::new(&h);
    coeffs.next();
    let mut sum = one.clone();
    let mut power = one;
    let mut prev = Real::one(prec);
    for j in 1..MAX_SERIES_TERMS {
        let c = coeffs.next().expect("unbounded");
        power = &power * alpha;
        let term = power.scale(&Real::from_scalar(&c, prec));
        sum = &sum + &term;
        let size = term.abs();
        let r = &size / &prev;
        let unit = Real::one(prec);
        if r < unit && &(&size * &r) / &(&unit - &r) < tol * &sum.abs() {
            return Ok((sum, j + 1));
        }
        prev = size;
    }
    Err(PeriodsError::SeriesTruncated(MAX_SERIES_TERMS))
}

/// Partial sum through `α^{jmax}` of the residue expansion, coefficients from
/// the finite binomial sum.
pub fn expansion_value(k: i64, alpha: &BigComplex, jmax: u64) -> Result<BigComplex, PeriodsError> {
    check_k(k)?;
    let prec = check_precision(alpha.prec())?;
    let mut sum = BigComplex::zero(prec);
    let mut power = BigComplex::one(prec);
    for j in 0..=jmax {
        if j > 0 {
            power = &power * alpha;
        }
        let c = expansion_coefficient(k, j).expect("k validated");
        sum = &sum + &power.scale(&Real::from_scalar(&c, prec));
    }
    Ok(sum)
}
