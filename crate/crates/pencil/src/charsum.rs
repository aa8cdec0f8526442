use exactcore::modp::{is_prime, legendre_table, mul_mod, poly_eval, scalar_mod};
use exactcore::par::{sum_i64, Exec};
use exactcore::ExactScalar;

use crate::branch::branch_polynomial_symbolic;
use crate::{check_k, PencilError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSum {
    /// `Σ_t χ(α·h(t))`.
    pub s: i64,
    /// `Σ_t (1 + χ(h(t)/α))`, the affine points of `α·y² = h(t)`.
    pub affine_count: i64,
    pub weil_ok: bool,
}

/// `|s| ≤ (6k+2)·√q + 2`, decided in exact integer arithmetic.
pub fn weil_bound_holds(k: u64, s: i64, q: u64) -> bool {
    let excess = s.unsigned_abs() as i128 - 2;
    if excess <= 0 {
        return true;
    }
    let g2 = (6 * k + 2) as i128;
    excess * excess <= g2 * g2 * q as i128
}

/// Reduced data `(α mod q, coefficients of h mod q)`.
fn reduce(k: i64, alpha: &ExactScalar, q: u64) -> Result<(u64, Vec<u64>), PencilError> {
    check_k(k)?;
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(PencilError::BadModulus(q));
    }
    let a = scalar_mod(alpha, q).ok_or_else(|| PencilError::BadReduction {
        q,
        reason: "denominator of alpha vanishes".into(),
    })?;
    if a == 0 {
        return Err(PencilError::BadReduction {
            q,
            reason: "alpha reduces to 0".into(),
        });
    }
    let a0 = hypergeom::jk_singular_value_closed_form(k).expect("k validated");
    if scalar_mod(&a0, q) == Some(a) {
        return Err(PencilError::BadReduction {
            q,
            reason: "alpha reduces to the singular value".into(),
        });
    }
    let sym = branch_polynomial_symbolic(k)?;
    let deg = sym.degree_in("t").unwrap_or(0) as usize;
    let mut coeffs = vec![0u64; deg + 1];
    for (e, c) in sym.terms() {
        let cm = scalar_mod(c, q).expect("integer coefficients");
        let term = mul_mod(cm, exactcore::modp::pow_mod(a, e[0] as u64, q), q);
        let slot = &mut coeffs[e[1] as usize];
        *slot = (*slot + term) % q;
    }
    Ok((a, coeffs))
}

/// Character sum over the affine chart `t₀ = 1`, parallel over `t`.
pub fn charsum_y(k: i64, alpha: &ExactScalar, q: u64, exec: Exec) -> Result<CharSum, PencilError> {
    let (a, h) = reduce(k, alpha, q)?;
    let chi = legendre_table(q);
    let a_inv = exactcore::modp::inv_mod(a, q).expect("a nonzero");
    let s = sum_i64(exec, 0..q, |t| chi[mul_mod(a, poly_eval(&h, t, q), q) as usize] as i64);
    let affine_count = sum_i64(exec, 0..q, |t| {
        1 + chi[mul_mod(a_inv, poly_eval(&h, t, q), q) as usize] as i64
    });
    Ok(CharSum {
        s,
        affine_count,
        weil_ok: weil_bound_holds(k as u64, s, q),
    })
}

/// Exhaustive count of `(t, y) ∈ F_q²` with `α·y² = h(t)`.
pub fn charsum_y_brute(k: i64, alpha: &ExactScalar, q: u64) -> Result<i64, PencilError> {
    let (a, h) = reduce(k, alpha, q)?;
    let mut n = 0;
    for t in 0..q {
        let ht = poly_eval(&h, t, q);
        for y in 0..q {
            if mul_mod(a, mul_mod(y, y, q), q) == ht {
                n += 1;
            }
        }
    }
    Ok(n)
}
