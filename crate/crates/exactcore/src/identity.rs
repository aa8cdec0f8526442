//! Seeded random-evaluation identity testing with exact rational samples.
//!
//! Each sample is exact, so a reported mismatch is a proof of inequality;
//! equality is probabilistic in the usual Schwartz-Zippel sense.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poly::{ExactPoly, Monomial};
use crate::scalar::ExactScalar;

/// Bound on sample numerators and denominators.
pub const SAMPLE_BOUND: i64 = 10_000;
pub const DEFAULT_TRIALS: usize = 20;
/// Samples drawn per requested trial before giving up on excluded loci.
const ATTEMPTS_PER_TRIAL: usize = 50;
/// Largest exponent magnitude accepted while inferring a monomial factor.
const MAX_FACTOR_EXPONENT: i32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("inconclusive: all {attempts} sample points hit an excluded locus")]
    Inconclusive { attempts: usize },
    #[error("operands use different variables: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub equal: bool,
    /// `Some` iff `equal`; the constant monomial 1 when no factor was allowed.
    pub factor: Option<Monomial>,
    pub samples_used: usize,
    pub excluded: usize,
    /// First point where the two sides disagreed, with both values.
    pub witness: Option<(Vec<ExactScalar>, ExactScalar, ExactScalar)>,
}

/// Draws one random nonzero rational with bounded numerator and denominator.
pub fn random_rational<R: Rng>(rng: &mut R) -> ExactScalar {
    loop {
        let n: i64 = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let d: i64 = rng.gen_range(1..=SAMPLE_BOUND);
        if n != 0 {
            return ExactScalar::new(n, d);
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Identity test for polynomials sharing one variable list.
pub fn identity_check_random(
    lhs: &ExactPoly,
    rhs: &ExactPoly,
    allow_monomial_factor: bool,
    trials: usize,
    seed: u64,
) -> Result<IdentityOutcome, IdentityError> {
    if lhs.vars() != rhs.vars() {
        return Err(IdentityError::VariableMismatch(
            lhs.vars().to_vec(),
            rhs.vars().to_vec(),
        ));
    }
    identity_check_fn(
        lhs.nvars(),
        |p| lhs.eval(p),
        |p| rhs.eval(p),
        allow_monomial_factor,
        trials,
        seed,
    )
}

/// Identity test for arbitrary exact evaluators; `None` marks a point on an
/// excluded locus (pole, zero denominator).
pub fn identity_check_fn<L, R>(
    nvars: usize,
    lhs: L,
    rhs: R,
    allow_monomial_factor: bool,
    trials: usize,
    seed: u64,
) -> Result<IdentityOutcome, IdentityError>
where
    L: Fn(&[ExactScalar]) -> Option<ExactScalar>,
    R: Fn(&[ExactScalar]) -> Option<ExactScalar>,
{
    if trials == 0 {
        return Err(IdentityError::NoTrials);
    }
    let mut rng = seeded_rng(seed);
    let mut samples: Vec<(Vec<ExactScalar>, ExactScalar, ExactScalar)> = Vec::with_capacity(trials);
    let mut excluded = 0;
    let max_attempts = trials * ATTEMPTS_PER_TRIAL;
    let mut attempts = 0;
    while samples.len() < trials && attempts < max_attempts {
        attempts += 1;
        let point: Vec<ExactScalar> = (0..nvars).map(|_| random_rational(&mut rng)).collect();
        match (lhs(&point), rhs(&point)) {
            (Some(l), Some(r)) => samples.push((point, l, r)),
            _ => excluded += 1,
        }
    }
    if samples.is_empty() {
        return Err(IdentityError::Inconclusive { attempts });
    }

    let factor = if allow_monomial_factor {
        match infer_factor(nvars, &lhs, &rhs, &samples) {
            Some(f) => f,
            None => {
                let (p, l, r) = samples
                    .iter()
                    .find(|(_, l, r)| l.is_zero() != r.is_zero())
                    .unwrap_or(&samples[0])
                    .clone();
                return Ok(IdentityOutcome {
                    equal: false,
                    factor: None,
                    samples_used: samples.len(),
                    excluded,
                    witness: Some((p, l, r)),
                });
            }
        }
    } else {
        Monomial::constant(ExactScalar::one(), nvars)
    };

    for (p, l, r) in &samples {
        let scaled = factor.eval(p).map(|f| f * r);
        if scaled.as_ref() != Some(l) {
            return Ok(IdentityOutcome {
                equal: false,
                factor: None,
                samples_used: samples.len(),
                excluded,
                witness: Some((p.clone(), l.clone(), r.clone())),
            });
        }
    }
    Ok(IdentityOutcome {
        equal: true,
        factor: Some(factor),
        samples_used: samples.len(),
        excluded,
        witness: None,
    })
}

/// Infers `c·∏xᵢ^eᵢ` from the ratio lhs/rhs by doubling one coordinate at a
/// time; the ratio must scale by an exact power of two.
fn infer_factor<L, R>(
    nvars: usize,
    lhs: &L,
    rhs: &R,
    samples: &[(Vec<ExactScalar>, ExactScalar, ExactScalar)],
) -> Option<Monomial>
where
    L: Fn(&[ExactScalar]) -> Option<ExactScalar>,
    R: Fn(&[ExactScalar]) -> Option<ExactScalar>,
{
    if samples.iter().all(|(_, l, r)| l.is_zero() && r.is_zero()) {
        return Some(Monomial::constant(ExactScalar::one(), nvars));
    }
    let two = ExactScalar::from_int(2);
    'outer: for (p, l, r) in samples {
        if l.is_zero() || r.is_zero() {
            continue;
        }
        let r0 = l / r;
        let mut exps = vec![0i32; nvars];
        for i in 0..nvars {
            let mut q = p.clone();
            q[i] = &q[i] * &two;
            let (Some(l2), Some(r2)) = (lhs(&q), rhs(&q)) else {
                continue 'outer;
            };
            if l2.is_zero() || r2.is_zero() {
                continue 'outer;
            }
            exps[i] = log2_exact(&((l2 / r2) / &r0))?;
        }
        let m = Monomial {
            coeff: ExactScalar::one(),
            exps,
        };
        let base = m.eval(p)?;
        return Some(Monomial {
            coeff: r0 / base,
            exps: m.exps,
        });
    }
    None
}

fn log2_exact(x: &ExactScalar) -> Option<i32> {
    (-MAX_FACTOR_EXPONENT..=MAX_FACTOR_EXPONENT).find(|&e| ExactScalar::from_int(2).pow(e as i64).as_ref() == Some(x))
}
