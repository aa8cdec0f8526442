use exactcore::ExactScalar;

/// Dense univariate polynomial over ℚ, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalUniPoly(pub Vec<ExactScalar>);

impl RationalUniPoly {
    pub fn new(mut c: Vec<ExactScalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * &ExactScalar::from_int(i as i64))
                .collect(),
        )
    }

    fn monic(&self) -> Self {
        let lead = self.0.last().expect("nonzero").clone();
        Self(self.0.iter().map(|x| x / &lead).collect())
    }

    fn rem(&self, b: &Self) -> Self {
        let mut r = self.0.clone();
        let bl = b.0.last().expect("nonzero divisor").clone();
        while r.len() >= b.0.len() && !r.is_empty() {
            let shift = r.len() - b.0.len();
            let f = r.last().unwrap() / &bl;
            for (i, x) in b.0.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&f * x);
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Self(r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = if r.degree().is_some() { r.monic() } else { r };
        }
        if a.degree().is_some() {
            a.monic()
        } else {
            a
        }
    }
}

/// `gcd(f, f')` is constant.
pub fn squarefree_rational(f: &RationalUniPoly) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> RationalUniPoly {
        RationalUniPoly::new(xs.iter().map(|&x| ExactScalar::from_int(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = p(&[2, -3, 0, 1]);
        assert!(!squarefree_rational(&f));
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert!(squarefree_rational(&p(&[-2, 0, 1])));
    }
}
