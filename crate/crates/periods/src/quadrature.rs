use exactcore::par::{map_chunks, Exec};
use exactcore::{BigComplex, ExactScalar, Real};

use crate::contour::{contour_radius_with_exponent, midpoint_exponent, ContourSpec};
use crate::series::{alpha_limit, series_value};
use crate::{check_k, PeriodsError};

pub const DEFAULT_PRECISION: usize = 256;
/// `10⁻³⁰`.
pub const DEFAULT_TOL: (i64, i64) = (1, 30);
pub const MIN_NODES: usize = 32;
pub const MAX_NODES: usize = 1 << 20;
const MIN_QUADRATURE_PRECISION: usize = 128;
const CHUNK: usize = 64;

/// Which square root of the second radicand is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Principal,
    /// The negated principal root; the wrong lift of the contour.
    Flipped,
}

#[derive(Clone, Debug)]
pub struct QuadratureOptions {
    pub prec: usize,
    pub tol: Real,
    /// Radius exponent; the band midpoint when `None`.
    pub exponent: Option<ExactScalar>,
    pub branch: Branch,
    pub exec: Exec,
    /// Require `|α| ≤ α_{k,0}/2`.
    pub enforce_margin: bool,
}

impl QuadratureOptions {
    pub fn new(prec: usize, tol: Real) -> Self {
        Self {
            prec,
            tol,
            exponent: None,
            branch: Branch::Principal,
            exec: Exec::default(),
            enforce_margin: true,
        }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        let tol = ExactScalar::new(1, 1) / ExactScalar::from_int(10).pow(DEFAULT_TOL.1).expect("nonzero");
        Self::new(DEFAULT_PRECISION, Real::from_scalar(&tol, DEFAULT_PRECISION))
    }
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: BigComplex,
    /// `|I_N − I_{N/2}|` at the final `N`.
    pub error_estimate: Real,
    pub contour: ContourSpec,
    /// `(N, |I_N − I_{N/2}|)` for every doubling.
    pub history: Vec<(usize, Real)>,
    /// Smallest `1 − |z−1|` over both radicands and all nodes.
    pub disk_margin: Real,
}

struct Partial {
    sum: BigComplex,
    margin: Real,
    violation: Option<(u8, usize)>,
}

/// `G(t) = (1+4t^{2k+1}/α)^{−1/2}(1−t(8+2α/t^{2k+1})²)^{−1/2}`; the period is
/// the mean of `G` over equally spaced nodes since `dt/t = i·dθ`.
fn integrand(k: u64, alpha: &BigComplex, t: &BigComplex, branch: Branch) -> (BigComplex, Real, Option<u8>) {
    let prec = t.prec();
    let one = BigComplex::one(prec);
    let w = t.powi(2 * k as u32 + 1);
    let d1 = &(&w / alpha).scale(&Real::from_i64(4, prec));
    let inner = &BigComplex::from_real(Real::from_i64(8, prec)) + &(&alpha.scale(&Real::from_i64(2, prec)) / &w);
    let d2 = -&(t * &(&inner * &inner));
    let (m1, m2) = (d1.abs(), d2.abs());
    let unit = Real::one(prec);
    let margin = &unit - &m1.max(&m2);
    let bad = if m1 >= unit {
        Some(1)
    } else if m2 >= unit {
        Some(2)
    } else {
        None
    };
    let s1 = (&one + d1).sqrt();
    let mut s2 = (&one + &d2).sqrt();
    if branch == Branch::Flipped {
        s2 = -&s2;
    }
    ((&s1 * &s2).recip(), margin, bad)
}

fn node_sum(
    k: u64,
    alpha: &BigComplex,
    rho: &Real,
    n: usize,
    indices: impl Fn(usize) -> usize + Sync,
    count: usize,
    opts: &QuadratureOptions,
) -> Partial {
    let prec = opts.prec;
    let tau = &Real::pi(prec) * &Real::from_i64(2, prec);
    let parts = map_chunks(opts.exec, count, CHUNK, |range| {
        let mut p = Partial {
            sum: BigComplex::zero(prec),
            margin: Real::one(prec),
            violation: None,
        };
        for i in range {
            let idx = indices(i);
            let theta = &(&tau * &Real::from_i64(idx as i64, prec)) / &Real::from_i64(n as i64, prec);
            let t = BigComplex::from_polar(rho, &theta);
            let (g, m, bad) = integrand(k, alpha, &t, opts.branch);
            p.sum = &p.sum + &g;
            if m < p.margin {
                p.margin = m;
            }
            if p.violation.is_none() {
                p.violation = bad.map(|w| (w, idx));
            }
        }
        p
    });
    let mut out = Partial {
        sum: BigComplex::zero(prec),
        margin: Real::one(prec),
        violation: None,
    };
    for p in parts {
        out.sum = &out.sum + &p.sum;
        if p.margin < out.margin {
            out.margin = p.margin;
        }
        if out.violation.is_none() {
            out.violation = p.violation;
        }
    }
    out
}

/// Trapezoid rule on `|t| = ρ`, doubling `N` from 32 until successive values
/// differ by less than `tol`.
pub fn period_quadrature(k: i64, alpha: &BigComplex, opts: &QuadratureOptions) -> Result<Quadrature, PeriodsError> {
    let ku = check_k(k)?;
    if opts.prec < MIN_QUADRATURE_PRECISION {
        return Err(PeriodsError::LowPrecision {
            min: MIN_QUADRATURE_PRECISION,
            got: opts.prec,
        });
    }
    let prec = opts.prec;
    let alpha = BigComplex::new(alpha.re.with_prec(prec), alpha.im.with_prec(prec));
    if alpha.is_zero() {
        return Err(PeriodsError::AlphaZero);
    }
    let abs = alpha.abs();
    if opts.enforce_margin {
        let limit = &alpha_limit(k, prec)? * &Real::from_f64(0.5, prec);
        if abs > limit {
            return Err(PeriodsError::AlphaOutOfRange {
                abs: abs.to_sci(6),
                limit: limit.to_sci(6),
            });
        }
    }
    let exponent = match &opts.exponent {
        Some(e) => e.clone(),
        None => midpoint_exponent(k)?,
    };
    let rho = contour_radius_with_exponent(k, &abs, &exponent)?;

    let mut n = MIN_NODES;
    let first = node_sum(ku, &alpha, &rho, n, |i| i, n, opts);
    if let Some((which, node)) = first.violation {
        return Err(PeriodsError::BranchValidity { which, node, n });
    }
    let mut sum = first.sum;
    let mut margin = first.margin;
    let mut value = sum.scale(&(&Real::one(prec) / &Real::from_i64(n as i64, prec)));
    let mut history = Vec::new();
    loop {
        if 2 * n > MAX_NODES {
            let estimate = history
                .last()
                .map_or("none".to_string(), |(_, e): &(usize, Real)| e.to_sci(6));
            return Err(PeriodsError::NoConvergence { n: 2 * n, estimate });
        }
        let odd = node_sum(ku, &alpha, &rho, 2 * n, |i| 2 * i + 1, n, opts);
        if let Some((which, node)) = odd.violation {
            return Err(PeriodsError::BranchValidity { which, node, n: 2 * n });
        }
        n *= 2;
        sum = &sum + &odd.sum;
        if odd.margin < margin {
            margin = odd.margin;
        }
        let next = sum.scale(&(&Real::one(prec) / &Real::from_i64(n as i64, prec)));
        let err = (&next - &value).abs();
        value = next;
        history.push((n, err.clone()));
        if err < opts.tol {
            let contour = ContourSpec {
                radius: rho.clone(),
                exponent,
                base_point: BigComplex::from_real(rho),
                sample_count: n,
                precision_bits: prec,
            };
            return Ok(Quadrature {
                value,
                error_estimate: err,
                contour,
                history,
                disk_margin: margin,
            });
        }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodResult {
    pub quadrature: Quadrature,
    pub series_value: BigComplex,
    pub series_terms_used: usize,
    /// `|period − series| / |series|`.
    pub agreement: Real,
    pub pass: bool,
}

/// Passes iff the relative difference is below `max(tol, 10·error_estimate)`.
pub fn main_theorem_check(k: i64, alpha: &BigComplex, opts: &QuadratureOptions) -> Result<PeriodResult, PeriodsError> {
    let quadrature = period_quadrature(k, alpha, opts)?;
    let prec = opts.prec;
    let alpha = BigComplex::new(alpha.re.with_prec(prec), alpha.im.with_prec(prec));
    let (series, terms) = series_value(k, &alpha, &opts.tol)?;
    let agreement = &(&quadrature.value - &series).abs() / &series.abs();
    let bound = opts.tol.max(&(&quadrature.error_estimate * &Real::from_i64(10, prec)));
    let pass = agreement < bound;
    Ok(PeriodResult {
        quadrature,
        series_value: series,
        series_terms_used: terms,
        agreement,
        pass,
    })
}
