//! Small-prime modular arithmetic and the quadratic character.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::ExactScalar;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| pow_mod(a, p - 2, p))
}

/// Quadratic character by Euler's criterion: 0, 1 or -1.
pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Table of the quadratic character on `0..p`.
pub fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[mul_mod(x, x, p) as usize] = 1;
    }
    t
}

pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

/// Reduction of a rational modulo `p`; `None` if the denominator vanishes.
pub fn scalar_mod(x: &ExactScalar, p: u64) -> Option<u64> {
    let n = bigint_mod(x.numer(), p);
    let d = inv_mod(bigint_mod(x.denom(), p), p)?;
    Some(mul_mod(n, d, p))
}

/// Dense polynomial over `F_p`, low degree first, trimmed.
pub fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p).expect("unit leading coefficient");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(f, c, p)) % p;
        }
        r = poly_trim(r);
    }
    r
}

/// Monic-free gcd degree of two polynomials over `F_p`.
pub fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

pub fn poly_derivative(a: &[u64], p: u64) -> Vec<u64> {
    poly_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}
