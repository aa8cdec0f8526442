use exactcore::{factorial, ExactScalar};
use num_bigint::BigInt;
use num_traits::One;

use crate::{check_k, HypergeomError};

/// Weights `a₀ ≤ … ≤ a_m` and degree `d` of a weighted hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedHypersurface {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightedHypersurface {
    /// Weights are sorted on construction.
    pub fn new(mut weights: Vec<u64>, degree: u64) -> Result<Self, HypergeomError> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(HypergeomError::InvalidWeights);
        }
        if degree == 0 {
            return Err(HypergeomError::InvalidDegree);
        }
        weights.sort_unstable();
        Ok(Self { weights, degree })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `d = Σaᵢ − 1`.
    pub fn is_anticanonical(&self) -> bool {
        self.weights.iter().sum::<u64>() == self.degree + 1
    }
}

/// `X_{8k+4} ⊂ P(2, 2k+1, 2k+1, 4k+1)`.
pub fn jk_hypersurface(k: i64) -> Result<WeightedHypersurface, HypergeomError> {
    let k = check_k(k)?;
    WeightedHypersurface::new(vec![2, 2 * k + 1, 2 * k + 1, 4 * k + 1], 8 * k + 4)
}

/// `(dj)!·j!/∏(aᵢj)!`.
pub fn ifun_coefficient(h: &WeightedHypersurface, j: u64) -> ExactScalar {
    let num = factorial(h.degree * j) * factorial(j);
    let den: BigInt = h.weights.iter().map(|&a| factorial(a * j)).product();
    ExactScalar::new(num, den)
}

/// `c_0, …, c_jmax` using the ratio `c_j / c_{j−1}`.
pub fn ifun_coefficients(h: &WeightedHypersurface, jmax: u64) -> Vec<ExactScalar> {
    IfunCoefficients::new(h).take(jmax as usize + 1).collect()
}

/// Unbounded stream `c_0, c_1, …` advanced by the exact ratio `c_j / c_{j−1}`.
#[derive(Clone, Debug)]
pub struct IfunCoefficients<'a> {
    h: &'a WeightedHypersurface,
    j: u64,
    c: ExactScalar,
}

impl<'a> IfunCoefficients<'a> {
    pub fn new(h: &'a WeightedHypersurface) -> Self {
        Self {
            h,
            j: 0,
            c: ExactScalar::one(),
        }
    }
}

impl Iterator for IfunCoefficients<'_> {
    type Item = ExactScalar;

    fn next(&mut self) -> Option<ExactScalar> {
        if self.j > 0 {
            let j = self.j;
            let mut num = BigInt::from(j);
            for m in 1..=self.h.degree {
                num *= self.h.degree * (j - 1) + m;
            }
            let mut den = BigInt::one();
            for &a in &self.h.weights {
                for m in 1..=a {
                    den *= a * (j - 1) + m;
                }
            }
            self.c = &self.c * &ExactScalar::new(num, den);
        }
        self.j += 1;
        Some(self.c.clone())
    }
}

/// `∏aᵢ^{aᵢ}/d^d`.
pub fn singular_value(h: &WeightedHypersurface) -> ExactScalar {
    let num: BigInt = h
        .weights
        .iter()
        .map(|&a| num_traits::pow(BigInt::from(a), a as usize))
        .product();
    let den = num_traits::pow(BigInt::from(h.degree), h.degree as usize);
    ExactScalar::new(num, den)
}

/// `(4k+1)^{4k+1} / (4^{8k+3}·(2k+1)^{2(2k+1)})`.
pub fn jk_singular_value_closed_form(k: i64) -> Result<ExactScalar, HypergeomError> {
    let k = check_k(k)? as usize;
    let num = num_traits::pow(BigInt::from(4 * k + 1), 4 * k + 1);
    let den = num_traits::pow(BigInt::from(4), 8 * k + 3) * num_traits::pow(BigInt::from(2 * k + 1), 2 * (2 * k + 1));
    Ok(ExactScalar::new(num, den))
}
