use exactcore::{multiset_difference, ExactScalar, SignedMultiset};
use num_bigint::BigInt;

use crate::hypersurface::jk_singular_value_closed_form;
use crate::{check_k, HypergeomError};

/// Hypergeometric parameters `v`, `w`, cyclotomic data `p`, `q` and
/// `M = ∏p^p / ∏q^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcmData {
    pub v: Vec<ExactScalar>,
    pub w: Vec<ExactScalar>,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    pub m: ExactScalar,
}

fn power_product(xs: &[u64]) -> BigInt {
    xs.iter()
        .map(|&x| num_traits::pow(BigInt::from(x), x as usize))
        .product()
}

pub fn bcm_data(k: i64) -> Result<BcmData, HypergeomError> {
    let k = check_k(k)?;
    let n = 8 * k + 4;
    let v = (1..n)
        .filter(|&j| !(j % 4 == 0 && j / 4 >= 1 && j / 4 <= 2 * k) && j != 4 * k + 2)
        .map(|j| ExactScalar::new(j, n))
        .collect();
    let w = (1..=2 * k + 1)
        .map(|l| ExactScalar::new(l, 2 * k + 1))
        .chain((1..=4 * k + 1).map(|m| ExactScalar::new(m, 4 * k + 1)))
        .collect();
    let p = vec![n, 1];
    let q = vec![2, 2 * k + 1, 2 * k + 1, 4 * k + 1];
    let m = ExactScalar::new(power_product(&p), power_product(&q));
    Ok(BcmData { v, w, p, q, m })
}

fn cyclotomic_roots(xs: &[u64]) -> SignedMultiset {
    let mut out = SignedMultiset::new();
    for &x in xs {
        for j in 1..=x {
            out.insert(ExactScalar::new(j, x), 1);
        }
    }
    out
}

/// Checks `{j/p} − {j/q} = v − w` as signed multisets mod 1.
pub fn multiset_identity_check_with(p: &[u64], q: &[u64], v: &[ExactScalar], w: &[ExactScalar]) -> bool {
    let lhs = multiset_difference(&cyclotomic_roots(p), &cyclotomic_roots(q));
    let rhs = multiset_difference(
        &SignedMultiset::from_values(v.iter().cloned()),
        &SignedMultiset::from_values(w.iter().cloned()),
    );
    lhs == rhs
}

pub fn multiset_identity_check(k: i64) -> Result<bool, HypergeomError> {
    let d = bcm_data(k)?;
    Ok(multiset_identity_check_with(&d.p, &d.q, &d.v, &d.w))
}

/// `M_k·α_{k,0}`.
pub fn m_alpha_product(k: i64) -> Result<ExactScalar, HypergeomError> {
    Ok(bcm_data(k)?.m * jk_singular_value_closed_form(k)?)
}
