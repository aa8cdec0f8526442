use exactcore::{ExactScalar, SignedMultiset};
use num_bigint::BigInt;

use crate::hypersurface::{ifun_coefficients, WeightedHypersurface};
use crate::HypergeomError;

/// The operator `P₀(D) + α·P₁(D)` stored as root multisets of its linear
/// factors, before and after removing common roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeomOperator {
    pub p0_roots: SignedMultiset,
    pub p1_roots: SignedMultiset,
    pub reduced_p0: SignedMultiset,
    pub reduced_p1: SignedMultiset,
    pub order: usize,
}

pub fn build_operator(h: &WeightedHypersurface) -> HypergeomOperator {
    let mut p0 = SignedMultiset::new();
    for &a in h.weights() {
        for m in 0..a {
            p0.insert(ExactScalar::new(m, a), 1);
        }
    }
    let d = h.degree();
    let mut p1 = SignedMultiset::new();
    p1.insert(ExactScalar::zero(), 1);
    for m in 0..d {
        p1.insert(ExactScalar::new(m, d), 1);
    }
    let common = p0.intersection(&p1);
    let reduced_p0 = exactcore::multiset_difference(&p0, &common);
    let reduced_p1 = exactcore::multiset_difference(&p1, &common);
    let order = reduced_p1.total() as usize;
    HypergeomOperator {
        p0_roots: p0,
        p1_roots: p1,
        reduced_p0,
        reduced_p1,
        order,
    }
}

/// `P₀(j) = −∏ᵢ (aᵢj)(aᵢj−1)…(aᵢj−aᵢ+1)`.
pub fn p0_value(h: &WeightedHypersurface, j: i64) -> BigInt {
    let mut acc = BigInt::from(-1);
    for &a in h.weights() {
        let a = a as i64;
        for m in 0..a {
            acc *= a * j - m;
        }
    }
    acc
}

/// `P₁(j−1) = j·(dj)(dj−1)…(dj−d+1)`, i.e. the value at `x = j − 1`.
pub fn p1_value(h: &WeightedHypersurface, x: i64) -> BigInt {
    let j = x + 1;
    let d = h.degree() as i64;
    let mut acc = BigInt::from(j);
    for m in 0..d {
        acc *= d * j - m;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub holds: bool,
    pub checked: u64,
    pub first_failure: Option<u64>,
}

/// Checks `c_j·P₀(j) + c_{j−1}·P₁(j−1) = 0` for `1 ≤ j ≤ jmax`.
pub fn recurrence_check(h: &WeightedHypersurface, jmax: u64) -> Result<RecurrenceReport, HypergeomError> {
    if jmax == 0 {
        return Err(HypergeomError::InvalidJmax);
    }
    let cs = ifun_coefficients(h, jmax);
    for j in 1..=jmax {
        let lhs = &cs[j as usize] * &ExactScalar::from_int(p0_value(h, j as i64))
            + &cs[j as usize - 1] * &ExactScalar::from_int(p1_value(h, j as i64 - 1));
        if !lhs.is_zero() {
            return Ok(RecurrenceReport {
                holds: false,
                checked: j,
                first_failure: Some(j),
            });
        }
    }
    Ok(RecurrenceReport {
        holds: true,
        checked: jmax,
        first_failure: None,
    })
}
