//! Signed multisets of rationals modulo 1.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::ExactScalar;

/// Values are reduced into `[0, 1)`; zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SignedMultiset {
    entries: BTreeMap<ExactScalar, i64>,
}

impl SignedMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values<I: IntoIterator<Item = ExactScalar>>(values: I) -> Self {
        let mut m = Self::new();
        for v in values {
            m.insert(v, 1);
        }
        m
    }

    pub fn insert(&mut self, value: ExactScalar, mult: i64) {
        if mult == 0 {
            return;
        }
        let key = value.fract_mod1();
        let slot = self.entries.entry(key.clone()).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn multiplicity(&self, value: &ExactScalar) -> i64 {
        self.entries.get(&value.fract_mod1()).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExactScalar, i64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct values.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities (signed).
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.insert(k.clone(), *v);
        }
        out
    }

    pub fn negate(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Pointwise minimum of positive parts.
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (k, &a) in &self.entries {
            let b = other.entries.get(k).copied().unwrap_or(0);
            out.insert(k.clone(), a.min(b).max(0));
        }
        out
    }

    /// Values listed with multiplicity (positive part only), ascending.
    pub fn to_sorted_values(&self) -> Vec<ExactScalar> {
        self.entries
            .iter()
            .flat_map(|(k, &m)| std::iter::repeat_n(k.clone(), m.max(0) as usize))
            .collect()
    }
}

/// Pointwise multiplicity subtraction with zeros dropped.
pub fn multiset_difference(a: &SignedMultiset, b: &SignedMultiset) -> SignedMultiset {
    a.add(&b.negate())
}

impl fmt::Debug for SignedMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("}")
    }
}
