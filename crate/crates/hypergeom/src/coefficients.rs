use exactcore::par::{map_indexed, Exec};
use exactcore::{binomial, ExactScalar};
use num_bigint::BigInt;

use crate::hypersurface::{ifun_coefficient, jk_hypersurface};
use crate::{check_k, HypergeomError};

/// Both sides of the coefficient identity: [`expansion_coefficient`] and the
/// I-function coefficient `c_j`.
pub fn coefficient_identity_sides(k: i64, j: u64) -> Result<(ExactScalar, ExactScalar), HypergeomError> {
    let lhs = expansion_coefficient(k, j)?;
    let rhs = ifun_coefficient(&jk_hypersurface(k)?, j);
    Ok((lhs, rhs))
}

/// `binom(−1/2,m)(−1)^m 4^{3m−j} Σ_{p=j}^{2m} binom(−1/2,p−j) C(2m,p)` with
/// `m = (2k+1)j`, evaluated as the finite sum.
pub fn expansion_coefficient(k: i64, j: u64) -> Result<ExactScalar, HypergeomError> {
    let ku = check_k(k)?;
    let m = (2 * ku + 1) * j;
    let half = ExactScalar::new(-1, 2);
    let one = ExactScalar::one();

    // binom(-1/2, n) for n = 0..=2m, built incrementally
    let top = 2 * m;
    let mut bh = Vec::with_capacity(top as usize + 1);
    let mut cur = ExactScalar::one();
    let mut t = half.clone();
    bh.push(cur.clone());
    for n in 1..=top {
        cur = cur * &t / ExactScalar::from_int(n);
        t -= &one;
        bh.push(cur.clone());
    }

    let mut sum = ExactScalar::zero();
    for p in j..=top {
        sum += &(&bh[(p - j) as usize] * &ExactScalar::from_int(binomial(top, p)));
    }
    let sign = if m.is_multiple_of(2) {
        ExactScalar::one()
    } else {
        -ExactScalar::one()
    };
    let four_pow = ExactScalar::from_int(num_traits::pow(BigInt::from(4), (3 * m - j) as usize));
    Ok(&bh[m as usize] * &sign * four_pow * sum)
}

pub fn coefficient_identity_check(k: i64, j: u64) -> Result<bool, HypergeomError> {
    let (l, r) = coefficient_identity_sides(k, j)?;
    Ok(l == r)
}

/// Checks every `(k, j)` with `1 ≤ k ≤ kmax`, `0 ≤ j ≤ jmax`; results in
/// row-major order.
pub fn coefficient_identity_batch(exec: Exec, kmax: i64, jmax: u64) -> Result<Vec<(i64, u64, bool)>, HypergeomError> {
    check_k(kmax)?;
    let cols = jmax as usize + 1;
    let n = kmax as usize * cols;
    map_indexed(exec, n, |i| {
        let k = (i / cols) as i64 + 1;
        let j = (i % cols) as u64;
        coefficient_identity_check(k, j).map(|ok| (k, j, ok))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_first_cases() {
        assert_eq!(
            coefficient_identity_sides(1, 0).unwrap(),
            (ExactScalar::one(), ExactScalar::one())
        );
        let (l, r) = coefficient_identity_sides(1, 1).unwrap();
        assert_eq!(l, ExactScalar::from_int(55440));
        assert_eq!(r, ExactScalar::from_int(55440));
        assert!(coefficient_identity_check(2, 2).unwrap());
    }

    #[test]
    fn hand_sum_for_k1_j1() {
        // m = 3: 5/16 · 4^8 · 2.70703125
        let s = ExactScalar::new(270703125, 100000000);
        let l = ExactScalar::new(5, 16) * ExactScalar::from_int(65536) * s;
        assert_eq!(l, ExactScalar::from_int(55440));
    }
}
