use std::collections::BTreeMap;

use exactcore::{laurent_substitute, BigComplex, ExactPoly, ExactScalar};

use crate::{check_k, PencilError};

fn c(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

/// `h_{k,α}(t) = t(4t^{2k+1}+α)(−64t^{4k+2}+t^{4k+1}−32αt^{2k+1}−4α²)` in
/// variables `(alpha, t)`.
pub fn branch_polynomial_symbolic(k: i64) -> Result<ExactPoly, PencilError> {
    let k = check_k(k)? as i32;
    let v = ["alpha", "t"];
    let m = |coef: i64, ea: i32, et: i32| ExactPoly::monomial(&v, c(coef), &[ea, et]);
    let f1 = m(1, 0, 1);
    let f2 = m(4, 0, 2 * k + 1) + m(1, 1, 0);
    let f3 = m(-64, 0, 4 * k + 2) + m(1, 0, 4 * k + 1) + m(-32, 1, 2 * k + 1) + m(-4, 2, 0);
    Ok(f1 * f2 * f3)
}

/// `h_{k,α}` for an exact nonzero `α`, univariate in `t`.
pub fn branch_polynomial(k: i64, alpha: &ExactScalar) -> Result<ExactPoly, PencilError> {
    if alpha.is_zero() {
        return Err(PencilError::AlphaZero);
    }
    let sym = branch_polynomial_symbolic(k)?;
    Ok(sym.specialize("alpha", alpha)?.drop_var("alpha")?)
}

/// Coefficients of `h_{k,α}(t)` (ascending powers of `t`) at a complex `α`.
pub fn branch_coeffs_complex(k: i64, alpha: &BigComplex) -> Result<Vec<BigComplex>, PencilError> {
    if alpha.is_zero() {
        return Err(PencilError::AlphaZero);
    }
    let sym = branch_polynomial_symbolic(k)?;
    let prec = alpha.prec();
    let deg = sym.degree_in("t").unwrap_or(0) as usize;
    let mut out = vec![BigComplex::zero(prec); deg + 1];
    let powers: Vec<BigComplex> = (0..=3).map(|e| alpha.powi(e)).collect();
    for (e, coef) in sym.terms() {
        let term = powers[e[0] as usize].scale(&exactcore::Real::from_scalar(coef, prec));
        out[e[1] as usize] = &out[e[1] as usize] + &term;
    }
    Ok(out)
}

/// `(6k+4 − 2)/2 = 3k+1`.
pub fn genus(k: i64) -> Result<u64, PencilError> {
    let k = check_k(k)?;
    Ok((6 * k + 4 - 2) / 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPolys {
    pub delta1: ExactPoly,
    pub delta2: ExactPoly,
    pub delta: ExactPoly,
}

/// `δ₁ = 4at^{2k+1}+1`, `δ₂ = a²t^{4k+2} − 4tδ₁²`, `δ = δ₁δ₂` in `(a, t)`.
pub fn delta_polys(k: i64) -> Result<DeltaPolys, PencilError> {
    let k = check_k(k)? as i32;
    let v = ["a", "t"];
    let m = |coef: i64, ea: i32, et: i32| ExactPoly::monomial(&v, c(coef), &[ea, et]);
    let delta1 = m(4, 1, 2 * k + 1) + m(1, 0, 0);
    let delta2 = m(1, 2, 4 * k + 2) - m(4, 0, 1) * &delta1 * &delta1;
    let delta = &delta1 * &delta2;
    Ok(DeltaPolys { delta1, delta2, delta })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaIdentityReport {
    /// `a³·h_{k,1/a}` obtained by substituting `α ↦ a⁻¹`.
    pub cleared: ExactPoly,
    pub holds: bool,
    /// `a³·h_{k,1/a} − δ₁δ₂`.
    pub difference: ExactPoly,
    /// The same comparison with the `t^{2k+1}` exponent in the quartic
    /// factor's leading term.
    pub variant_holds: bool,
    pub variant_difference: ExactPoly,
}

/// Exact check of `a³·h_{k,1/a} = δ₁·δ₂` in `ℚ[a, t]`, together with the
/// variant whose leading term reads `−64a²t^{2k+1}`.
pub fn delta_branch_identity(k: i64) -> Result<DeltaIdentityReport, PencilError> {
    let ku = check_k(k)? as i32;
    let h = branch_polynomial_symbolic(k)?;
    let v = ["a", "t"];
    let images = BTreeMap::from([
        ("alpha".to_string(), ExactPoly::monomial(&v, c(1), &[-1, 0])),
        ("t".to_string(), ExactPoly::monomial(&v, c(1), &[0, 1])),
    ]);
    let cleared = laurent_substitute(&h, &images)?.mul_monomial(&exactcore::Monomial {
        coeff: c(1),
        exps: vec![3, 0],
    })?;
    let d = delta_polys(k)?;
    let difference = &cleared - &d.delta;

    let m = |coef: i64, ea: i32, et: i32| ExactPoly::monomial(&v, c(coef), &[ea, et]);
    let variant =
        m(1, 0, 1) * &d.delta1 * (m(-64, 2, 2 * ku + 1) + m(1, 2, 4 * ku + 1) + m(-32, 1, 2 * ku + 1) + m(-4, 0, 0));
    let variant_difference = &variant - &d.delta;
    Ok(DeltaIdentityReport {
        holds: difference.is_zero(),
        cleared,
        difference,
        variant_holds: variant_difference.is_zero(),
        variant_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(branch_polynomial_symbolic(1).unwrap().degree_in("t"), Some(10));
        assert_eq!(branch_polynomial(2, &c(3)).unwrap().degree_in("t"), Some(16));
        assert_eq!(genus(1).unwrap(), 4);
    }

    #[test]
    fn vanishes_at_zero() {
        let h = branch_polynomial(1, &c(1)).unwrap();
        assert_eq!(h.eval(&[c(0)]), Some(c(0)));
        assert!(branch_polynomial(1, &c(0)).is_err());
    }

    #[test]
    fn hand_value_k1_alpha1_t1() {
        // h(1) = 1·(4+1)·(−64+1−32−4) = −495
        let h = branch_polynomial(1, &c(1)).unwrap();
        assert_eq!(h.eval(&[c(1)]), Some(c(-495)));
    }

    #[test]
    fn delta_small_cases() {
        let d = delta_polys(1).unwrap();
        assert_eq!(d.delta1.to_string(), "4*a*t^3 + 1");
        let d2_at_0 = d.delta2.specialize("a", &c(0)).unwrap();
        assert_eq!(d2_at_0, ExactPoly::monomial(&["a", "t"], c(-4), &[0, 1]));
        // δ₂ has t-degree 7 (leading term −64a²t⁷), so δ has t-degree 10,
        // the degree of h itself.
        assert_eq!(d.delta2.degree_in("t"), Some(7));
        assert_eq!(d.delta.degree_in("t"), Some(10));
    }

    #[test]
    fn identity_and_variant() {
        let r = delta_branch_identity(1).unwrap();
        assert!(r.holds, "{}", r.difference);
        assert!(!r.variant_holds);
        assert!(!r.variant_difference.is_zero());
    }
}
