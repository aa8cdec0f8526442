//! Exact multivariate Laurent polynomials over the rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::ExactScalar;

pub type Exponents = Vec<i32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("image of `{var}` is not a single monomial ({terms} terms)")]
    NonMonomialImage { var: String, terms: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative power of a non-monomial polynomial")]
    NegativePower,
}

/// A single Laurent monomial `coeff · ∏ xᵢ^eᵢ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub coeff: ExactScalar,
    pub exps: Exponents,
}

impl Monomial {
    pub fn constant(coeff: ExactScalar, nvars: usize) -> Self {
        Self {
            coeff,
            exps: vec![0; nvars],
        }
    }

    pub fn eval(&self, point: &[ExactScalar]) -> Option<ExactScalar> {
        let mut acc = self.coeff.clone();
        for (x, &e) in point.iter().zip(&self.exps) {
            if e != 0 {
                acc *= &x.pow(e as i64)?;
            }
        }
        Some(acc)
    }

    pub fn render(&self, vars: &[String]) -> String {
        ExactPoly::from_terms(vars.to_vec(), [(self.exps.clone(), self.coeff.clone())]).to_string()
    }
}

/// Sparse Laurent polynomial: exponent vectors (negative allowed) to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, ExactScalar>,
}

impl ExactPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: ExactScalar) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.add_term(e, ExactScalar::one());
        p
    }

    pub fn monomial(vars: &[&str], coeff: ExactScalar, exps: &[i32]) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent length");
        p.add_term(exps.to_vec(), coeff);
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, ExactScalar)>,
    {
        let mut p = Self::zero_owned(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> ExactScalar {
        self.terms.get(exps).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Monomial {
            coeff: c.clone(),
            exps: e.clone(),
        })
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero_owned(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self, PolyError> {
        let mut out = Self::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(add_exps(e, &m.exps)?, c * &m.coeff);
        }
        Ok(out)
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero_owned(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exps(e1, e2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Integer power; negative powers only for monomials.
    pub fn pow(&self, n: i32) -> Result<Self, PolyError> {
        if n < 0 {
            let m = self.as_monomial().ok_or(PolyError::NegativePower)?;
            let inv = Monomial {
                coeff: m.coeff.recip().ok_or(PolyError::NegativePower)?,
                exps: m
                    .exps
                    .iter()
                    .map(|e| e.checked_neg().ok_or(PolyError::ExponentOverflow))
                    .collect::<Result<_, _>>()?,
            };
            return Self::from_terms(self.vars.clone(), [(inv.exps, inv.coeff)]).pow(-n);
        }
        let mut acc = Self::constant_like(self, ExactScalar::one());
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn constant_like(template: &Self, c: ExactScalar) -> Self {
        let mut p = Self::zero_owned(template.vars.clone());
        p.add_term(vec![0; template.vars.len()], c);
        p
    }

    /// Evaluates at a rational point; `None` when a negative power hits zero.
    pub fn eval(&self, point: &[ExactScalar]) -> Option<ExactScalar> {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let m = Monomial {
                coeff: c.clone(),
                exps: e.clone(),
            };
            acc += &m.eval(point)?;
        }
        Some(acc)
    }

    /// Total degree range in variable `i`: (min exponent, max exponent).
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn degree_in(&self, name: &str) -> Option<i32> {
        self.degree_range(self.index_of(name)?).map(|r| r.1)
    }

    /// Substitutes exact scalars for some variables, keeping the variable
    /// list (the substituted exponents become zero).
    pub fn specialize(&self, name: &str, value: &ExactScalar) -> Result<Self, PolyError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut out = Self::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            let f = value.pow(e[i] as i64).ok_or(PolyError::NegativePower)?;
            let mut e2 = e.clone();
            e2[i] = 0;
            out.add_term(e2, c * &f);
        }
        Ok(out)
    }

    /// Drops variable `name`, which must not occur.
    pub fn drop_var(&self, name: &str) -> Result<Self, PolyError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        if self.terms.keys().any(|e| e[i] != 0) {
            return Err(PolyError::UnknownVariable(name.to_string()));
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ok(Self::from_terms(
            vars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = e.clone();
                e2.remove(i);
                (e2, c.clone())
            }),
        ))
    }

    /// Coefficients of a univariate polynomial in variable `name`, indexed by
    /// exponent; every other variable must be absent.
    pub fn univariate_coeffs(&self, name: &str) -> Result<Vec<ExactScalar>, PolyError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let deg = self.degree_range(i).map(|r| r.1).unwrap_or(0).max(0) as usize;
        let mut out = vec![ExactScalar::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &x)| j != i && x != 0) || e[i] < 0 {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
            out[e[i] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Collects coefficients with respect to `name`: map exponent -> polynomial
    /// in the remaining variables (still carrying the full variable list).
    pub fn collect(&self, name: &str) -> Result<BTreeMap<i32, ExactPoly>, PolyError> {
        let i = self
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut out: BTreeMap<i32, ExactPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(e[i])
                .or_insert_with(|| Self::zero_owned(self.vars.clone()))
                .add_term(e2, c.clone());
        }
        Ok(out)
    }
}

fn add_exps(a: &[i32], b: &[i32]) -> Result<Exponents, PolyError> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(PolyError::ExponentOverflow))
        .collect()
}

/// Replaces every variable of `p` by a monomial image; images are
/// polynomials sharing one target variable list and must be single terms.
pub fn laurent_substitute(p: &ExactPoly, images: &BTreeMap<String, ExactPoly>) -> Result<ExactPoly, PolyError> {
    let mut monos = Vec::with_capacity(p.nvars());
    let mut target: Option<Vec<String>> = None;
    for v in p.vars() {
        let img = images.get(v).ok_or_else(|| PolyError::MissingImage(v.clone()))?;
        let m = img.as_monomial().ok_or_else(|| PolyError::NonMonomialImage {
            var: v.clone(),
            terms: img.num_terms(),
        })?;
        match &target {
            None => target = Some(img.vars().to_vec()),
            Some(t) if t != img.vars() => return Err(PolyError::VariableMismatch(t.clone(), img.vars().to_vec())),
            _ => {}
        }
        monos.push(m);
    }
    let target = match target {
        Some(t) => t,
        None => return Ok(p.clone()),
    };
    let n = target.len();
    let mut out = ExactPoly::zero_owned(target);
    for (e, c) in p.terms() {
        let mut coeff = c.clone();
        let mut exps = vec![0i32; n];
        for (m, &k) in monos.iter().zip(e) {
            if k == 0 {
                continue;
            }
            coeff *= &m.coeff.pow(k as i64).ok_or(PolyError::NegativePower)?;
            for (slot, &me) in exps.iter_mut().zip(&m.exps) {
                let d = me.checked_mul(k).ok_or(PolyError::ExponentOverflow)?;
                *slot = slot.checked_add(d).ok_or(PolyError::ExponentOverflow)?;
            }
        }
        out.add_term(exps, coeff);
    }
    Ok(out)
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a, 'b> $tr<&'b ExactPoly> for &'a ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: &'b ExactPoly) -> ExactPoly {
                self.$inner(rhs).expect("polynomial operands share variables")
            }
        }
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: &'b ExactPoly) -> ExactPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ExactPoly> for &'a ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                self.$m(&rhs)
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        self.neg_ref()
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        self.neg_ref()
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly[{}]({})", self.vars.join(","), self)
    }
}
