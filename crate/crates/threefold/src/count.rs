use exactcore::modp::{is_prime, legendre_table, mul_mod, pow_mod, scalar_mod};
use exactcore::par::{sum_i64, Exec};
use exactcore::ExactScalar;

use crate::{check_k, ThreefoldError};

/// Largest modulus accepted by the exhaustive counter (`(q−1)⁴ ≤ 10⁴`).
pub const BRUTE_FORCE_MAX_Q: u64 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Quadratic character of the `u₁`-discriminant, summed over `(u₂,u₃,u₄)`.
    Char,
    /// All `(q−1)⁴` torus points.
    Brute,
}

/// Number of `(u₁,…,u₄) ∈ (F_q^×)⁴` with `α(u₁+u₂+u₃+u₄−1) = u₁²u₂^{2k+1}u₃^{2k+1}u₄^{4k+1}`.
pub fn count_w(k: i64, alpha: &ExactScalar, q: u64, method: CountMethod, exec: Exec) -> Result<i64, ThreefoldError> {
    let ku = check_k(k)?;
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(ThreefoldError::BadModulus(q));
    }
    let a = scalar_mod(alpha, q).ok_or_else(|| ThreefoldError::BadReduction {
        q,
        reason: "denominator of alpha vanishes".into(),
    })?;
    if a == 0 {
        return Err(ThreefoldError::BadReduction {
            q,
            reason: "alpha reduces to 0".into(),
        });
    }
    let (e1, e2) = (2 * ku + 1, 4 * ku + 1);
    let m = q - 1;
    match method {
        CountMethod::Char => {
            let chi = legendre_table(q);
            Ok(sum_i64(exec, 0..m * m * m, |idx| {
                let (u2, u3, u4) = (idx / (m * m) + 1, (idx / m) % m + 1, idx % m + 1);
                // B·u₁² − α·u₁ − α(S−1) = 0 with B ≠ 0
                let b = mul_mod(
                    mul_mod(pow_mod(u2, e1, q), pow_mod(u3, e1, q), q),
                    pow_mod(u4, e2, q),
                    q,
                );
                let s1 = (u2 + u3 + u4 + q - 1) % q;
                let disc = (mul_mod(a, a, q) + mul_mod(mul_mod(4, b, q), mul_mod(a, s1, q), q)) % q;
                let roots = 1 + chi[disc as usize] as i64;
                roots - i64::from(s1 == 0)
            }))
        }
        CountMethod::Brute => {
            if q > BRUTE_FORCE_MAX_Q {
                return Err(ThreefoldError::BruteTooLarge {
                    q,
                    max: BRUTE_FORCE_MAX_Q,
                });
            }
            let mut n = 0;
            for u1 in 1..q {
                for u2 in 1..q {
                    for u3 in 1..q {
                        for u4 in 1..q {
                            let lhs = mul_mod(a, (u1 + u2 + u3 + u4 + q - 1) % q, q);
                            let mono = mul_mod(
                                mul_mod(mul_mod(u1, u1, q), pow_mod(u2, e1, q), q),
                                mul_mod(pow_mod(u3, e1, q), pow_mod(u4, e2, q), q),
                                q,
                            );
                            if lhs == mono {
                                n += 1;
                            }
                        }
                    }
                }
            }
            Ok(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_small() {
        for q in [3, 5, 7] {
            let one = ExactScalar::one();
            let c = count_w(1, &one, q, CountMethod::Char, Exec::Sequential).unwrap();
            let b = count_w(1, &one, q, CountMethod::Brute, Exec::Sequential).unwrap();
            assert_eq!(c, b, "q = {q}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let one = ExactScalar::one();
        assert!(matches!(
            count_w(1, &one, 4, CountMethod::Char, Exec::Sequential),
            Err(ThreefoldError::BadModulus(4))
        ));
        assert!(count_w(1, &ExactScalar::from_int(5), 5, CountMethod::Char, Exec::Sequential).is_err());
        assert!(matches!(
            count_w(1, &one, 13, CountMethod::Brute, Exec::Sequential),
            Err(ThreefoldError::BruteTooLarge { .. })
        ));
    }
}
