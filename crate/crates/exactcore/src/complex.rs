//! Arbitrary-precision reals and complex numbers.
//!
//! Binary operations run at the larger of the operand precisions, so a value
//! never loses precision silently. Transcendental functions share a
//! per-thread constant cache.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use thiserror::Error;

use crate::scalar::ExactScalar;

pub const MIN_PRECISION: usize = 64;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrecisionError {
    #[error("precision {0} bits is below the minimum of {MIN_PRECISION}")]
    TooLow(usize),
}

pub fn check_precision(bits: usize) -> Result<usize, PrecisionError> {
    if bits < MIN_PRECISION {
        Err(PrecisionError::TooLow(bits))
    } else {
        Ok(bits)
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A big float tagged with its working precision in bits.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        Self { v, prec }
    }

    fn guard(prec: usize) -> usize {
        assert!(prec >= MIN_PRECISION, "precision {prec} below {MIN_PRECISION} bits");
        prec
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        let prec = Self::guard(prec);
        Self::wrap(BigFloat::from_i64(n, prec), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        let prec = Self::guard(prec);
        Self::wrap(BigFloat::from_f64(x, prec), prec)
    }

    /// Rounds an exact rational once to `prec` bits.
    pub fn from_scalar(x: &ExactScalar, prec: usize) -> Self {
        let prec = Self::guard(prec);
        let wide = prec + 64;
        let (n, d) = with_cc(|cc| {
            (
                BigFloat::parse(&x.numer().to_string(), Radix::Dec, wide, RM, cc),
                BigFloat::parse(&x.denom().to_string(), Radix::Dec, wide, RM, cc),
            )
        });
        Self::wrap(n.div(&d, prec, RM), prec)
    }

    pub fn pi(prec: usize) -> Self {
        let prec = Self::guard(prec);
        Self::wrap(with_cc(|cc| cc.pi(prec, RM)), prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    /// Same value carried at a (not lower) precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        let p = prec.max(self.prec);
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("precision change");
        Self::wrap(v, p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.ln(self.prec, RM, cc)), self.prec)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.exp(self.prec, RM, cc)), self.prec)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.sin(self.prec, RM, cc)), self.prec)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.cos(self.prec, RM, cc)), self.prec)
    }

    pub fn atan2(&self, x: &Real) -> Self {
        // angle of (x, self)
        let p = self.prec.max(x.prec);
        if x.is_zero() {
            let half = &Self::pi(p) / &Self::from_i64(2, p);
            return if self.is_negative() {
                -half
            } else if self.is_zero() {
                Self::zero(p)
            } else {
                half
            };
        }
        let base = Self::wrap(with_cc(|cc| self.v.div(&x.v, p, RM).atan(p, RM, cc)), p);
        if !x.is_negative() {
            base
        } else if self.is_negative() {
            &base - &Self::pi(p)
        } else {
            &base + &Self::pi(p)
        }
    }

    /// `self^e` for real `e`, `self > 0`.
    pub fn powf(&self, e: &Real) -> Self {
        (&self.ln() * e).exp()
    }

    pub fn powi(&self, n: u32) -> Self {
        Self::wrap(self.v.powi(n as usize, self.prec, RM), self.prec)
    }

    pub fn max(&self, other: &Real) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest binary64 value (underflows to zero, overflows to infinity).
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        match self.v.as_raw_parts() {
            Some((m, _, s, e, _)) if !m.is_empty() => {
                let top = m[m.len() - 1] as f64 / 18446744073709551616.0;
                let mag = top * 2f64.powi(e);
                if s == Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            _ => 0.0,
        }
    }

    /// Floor of log2 |self| (None for zero).
    pub fn log2_floor(&self) -> Option<i64> {
        if self.v.is_zero() {
            return None;
        }
        self.v.exponent().map(|e| e as i64 - 1)
    }

    /// `2^e` at the given precision.
    pub fn pow2(e: i64, prec: usize) -> Self {
        let prec = Self::guard(prec);
        let two = BigFloat::from_i64(2, prec);
        let v = two.powi(e.unsigned_abs() as usize, prec, RM);
        let v = if e < 0 {
            BigFloat::from_i64(1, prec).div(&v, prec, RM)
        } else {
            v
        };
        Self::wrap(v, prec)
    }

    /// Decimal rendering with all working digits.
    pub fn to_decimal(&self) -> String {
        with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".to_string())
    }

    /// Short decimal rendering (`digits` significant digits).
    pub fn to_sci(&self, digits: usize) -> String {
        let full = self.to_decimal();
        shorten_sci(&full, digits)
    }
}

fn shorten_sci(full: &str, digits: usize) -> String {
    let (mant, exp) = match full.find('e') {
        Some(i) => (&full[..i], &full[i + 1..]),
        None => (full, "0"),
    };
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let Ok(mut exp) = exp.parse::<i64>() else {
        return full.to_string();
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return full.to_string();
    }
    // normalize to one leading nonzero digit
    let all: String = int.chars().chain(frac.chars()).collect();
    let Some(lead) = all.find(|c| c != '0') else {
        return format!("{sign}0.0");
    };
    exp += int.len() as i64 - 1 - lead as i64;
    let mut ds: Vec<u8> = all[lead..].bytes().map(|b| b - b'0').collect();
    let keep = digits.max(1);
    if ds.len() > keep {
        let round_up = ds[keep] >= 5;
        ds.truncate(keep);
        if round_up {
            let mut i = keep;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.truncate(keep);
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let tail: String = ds[1..].iter().map(|d| char::from(b'0' + d)).collect();
    let tail = if tail.is_empty() { "0".to_string() } else { tail };
    format!("{sign}{}.{tail}e{exp}", ds[0])
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

macro_rules! real_op {
    ($tr:ident, $m:ident) => {
        impl<'a, 'b> $tr<&'b Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'b Real) -> Real {
                let p = self.prec.max(rhs.prec);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
    };
}

real_op!(Add, add);
real_op!(Sub, sub);
real_op!(Mul, mul);
real_op!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.v), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.v), self.prec)
    }
}

/// Complex number with big-float parts at a common precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Real,
    pub im: Real,
}

impl BigComplex {
    pub fn new(re: Real, im: Real) -> Self {
        let p = re.prec.max(im.prec);
        Self {
            re: re.with_prec(p),
            im: im.with_prec(p),
        }
    }

    pub fn zero(prec: usize) -> Self {
        Self {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn one(prec: usize) -> Self {
        Self {
            re: Real::one(prec),
            im: Real::zero(prec),
        }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec;
        Self { re, im: Real::zero(p) }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self {
            re: Real::from_f64(re, prec),
            im: Real::from_f64(im, prec),
        }
    }

    pub fn from_scalars(re: &ExactScalar, im: &ExactScalar, prec: usize) -> Self {
        Self {
            re: Real::from_scalar(re, prec),
            im: Real::from_scalar(im, prec),
        }
    }

    pub fn from_scalar(re: &ExactScalar, prec: usize) -> Self {
        Self::from_real(Real::from_scalar(re, prec))
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: &Real, theta: &Real) -> Self {
        Self::new(r * &theta.cos(), r * &theta.sin())
    }

    pub fn prec(&self) -> usize {
        self.re.prec.max(self.im.prec)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        self.im.atan2(&self.re)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs();
        let two = Real::from_i64(2, p);
        if !self.re.is_negative() {
            let s = (&(&r + &self.re) / &two).sqrt();
            let im = &self.im / &(&two * &s);
            Self::new(s, im)
        } else {
            let t = (&(&r - &self.re) / &two).sqrt();
            let re = &self.im.abs() / &(&two * &t);
            let im = if self.im.is_negative() { -t } else { t };
            Self::new(re, im)
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &Self::one(self.prec()) / self
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl<'b> Add<&'b BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &'b BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'b> Sub<&'b BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &'b BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'b> Mul<&'b BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &'b BigComplex) -> BigComplex {
        BigComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'b> Div<&'b BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &'b BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        BigComplex {
            re: &re / &d,
            im: &im / &d,
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! owned_cplx {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_cplx!(Add, add);
owned_cplx!(Sub, sub);
owned_cplx!(Mul, mul);
owned_cplx!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_rounds_to_nearest() {
        assert_eq!(shorten_sci("9.9999999e-4", 6), "1.0e-3");
        assert_eq!(shorten_sci("1.234565e2", 6), "1.23457e2");
        assert_eq!(shorten_sci("-1.2e0", 6), "-1.2e0");
        assert_eq!(shorten_sci("0.0", 6), "0.0");
        assert_eq!(Real::from_scalar(&ExactScalar::new(1, 1000), 256).to_sci(6), "1.0e-3");
    }

    const P: usize = 256;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * (1.0 + b.abs())
    }

    #[test]
    fn precision_floor_enforced() {
        assert!(check_precision(32).is_err());
        assert_eq!(check_precision(128), Ok(128));
    }

    #[test]
    fn arithmetic_keeps_higher_precision() {
        let a = Real::one(128);
        let b = Real::one(256);
        assert_eq!((&a + &b).prec(), 256);
    }

    #[test]
    fn rational_rounding() {
        let x = Real::from_scalar(&ExactScalar::new(1, 3), P);
        let back = &x * &Real::from_i64(3, P);
        let err = (&back - &Real::one(P)).abs();
        assert!(err < Real::pow2(-250, P));
    }

    #[test]
    fn principal_sqrt_quadrants() {
        for (re, im) in [(4.0, 0.0), (-4.0, 0.0), (0.0, 2.0), (-3.0, -4.0), (3.0, -4.0)] {
            let z = BigComplex::from_f64(re, im, P);
            let s = z.sqrt();
            let back = &s * &s;
            let (br, bi) = back.to_f64_pair();
            assert!(close(br, re) && close(bi, im), "{re} {im}");
            assert!(!s.re.is_negative());
        }
        let s = BigComplex::from_f64(-4.0, 0.0, P).sqrt();
        assert!(close(s.im.to_f64(), 2.0));
    }

    #[test]
    fn polar_and_arg() {
        let theta = &Real::pi(P) / &Real::from_i64(5, P);
        let z = BigComplex::from_polar(&Real::from_i64(2, P), &theta);
        assert!(close(z.abs().to_f64(), 2.0));
        assert!(close(z.arg().to_f64(), std::f64::consts::PI / 5.0));
        let w = BigComplex::from_f64(-1.0, -1.0, P);
        assert!(close(w.arg().to_f64(), -3.0 * std::f64::consts::PI / 4.0));
    }

    #[test]
    fn to_f64_round_trip() {
        for x in [1.0, -0.75, 1e-9, 3.5e12, -2.0f64.sqrt()] {
            assert_eq!(Real::from_f64(x, P).to_f64(), x);
        }
        assert_eq!(Real::zero(P).to_f64(), 0.0);
    }

    #[test]
    fn powf_and_logs() {
        let r = Real::from_f64(1e-6, P);
        let e = Real::from_scalar(&ExactScalar::new(11, 30), P);
        assert!(close(r.powf(&e).to_f64(), 1e-6f64.powf(11.0 / 30.0)));
        assert_eq!(Real::pow2(-3, P).to_f64(), 0.125);
        assert_eq!(Real::from_f64(0.125, P).log2_floor(), Some(-3));
    }
}
