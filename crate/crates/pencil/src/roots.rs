use exactcore::{check_precision, BigComplex, ExactScalar, Real};

use crate::branch::branch_coeffs_complex;
use crate::{check_k, PencilError};

/// Bands are only trusted for `|α|` at most this large.
pub const CLASSIFICATION_ALPHA_LIMIT: f64 = 1e-3;
const MAX_ITERATIONS: usize = 2000;

/// `p(z)` and `p'(z)` by Horner's rule; coefficients ascending.
pub fn horner(coeffs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.prec();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

#[derive(Clone, Debug)]
pub struct AberthOutput {
    pub roots: Vec<BigComplex>,
    pub iterations: usize,
}

/// Aberth–Ehrlich simultaneous iteration (Gauss–Seidel sweep) from the given
/// seeds; stops when every correction is below `2^{-(prec-8)}` relative.
pub fn aberth(coeffs: &[BigComplex], seeds: Vec<BigComplex>, prec: usize) -> Result<AberthOutput, PencilError> {
    check_precision(prec)?;
    let n = seeds.len();
    assert_eq!(coeffs.len(), n + 1, "one seed per root");
    let mut z = seeds;
    let one = BigComplex::one(prec);
    let stop = Real::pow2(-(prec as i64 - 8), prec);
    let mut worst = 0i64;
    for it in 1..=MAX_ITERATIONS {
        let mut converged = true;
        worst = i64::MIN;
        for i in 0..n {
            let (p, dp) = horner(coeffs, &z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut s = BigComplex::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = &s + &(&z[i] - zj).recip();
                }
            }
            let w = &ratio / &(&one - &(&ratio * &s));
            if !w.is_finite() {
                return Err(PencilError::NoConvergence {
                    iterations: it,
                    log2_step: i64::MAX,
                });
            }
            let step = w.abs();
            let scale = z[i].abs().max(&Real::pow2(-(prec as i64), prec));
            if step > &stop * &scale {
                converged = false;
            }
            worst = worst.max(step.log2_floor().unwrap_or(i64::MIN));
            z[i] = &z[i] - &w;
        }
        if converged {
            return Ok(AberthOutput {
                roots: z,
                iterations: it,
            });
        }
    }
    Err(PencilError::NoConvergence {
        iterations: MAX_ITERATIONS,
        log2_step: worst,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootClass {
    Zero,
    Inner,
    Middle,
    Outer,
}

/// All roots of `h_{k,α}` with the worst scaled residual.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub k: i64,
    pub roots: Vec<BigComplex>,
    /// `max |h(root)| / (1 + max |coefficient|)`.
    pub residual_bound: Real,
    pub iterations: usize,
    pub prec: usize,
}

impl RootSet {
    /// `log2` of the scaled residual bound (−∞ as `i64::MIN`).
    pub fn residual_log2(&self) -> i64 {
        self.residual_bound.log2_floor().unwrap_or(i64::MIN)
    }
}

#[derive(Clone, Debug)]
pub struct BranchData {
    pub roots: RootSet,
    pub classes: Vec<RootClass>,
}

impl BranchData {
    pub fn class_sizes(&self) -> [usize; 4] {
        let mut s = [0; 4];
        for c in &self.classes {
            s[*c as usize] += 1;
        }
        s
    }

    pub fn moduli(&self, class: RootClass) -> Vec<Real> {
        self.roots
            .roots
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| **c == class)
            .map(|(r, _)| r.abs())
            .collect()
    }
}

fn ring(n: usize, radius: f64, phase: f64, prec: usize) -> Vec<BigComplex> {
    (0..n)
        .map(|i| {
            let th = std::f64::consts::TAU * (i as f64 + phase) / n as f64;
            BigComplex::from_f64(radius * th.cos(), radius * th.sin(), prec)
        })
        .collect()
}

fn singular_alpha(k: i64) -> ExactScalar {
    hypergeom::jk_singular_value_closed_form(k).expect("k already validated")
}

/// Locates all `6k+4` roots. The root `t = 0` comes from the explicit
/// factor `t`; the remaining `6k+3` are found simultaneously, seeded on
/// circles at the expected asymptotic radii.
pub fn find_branch_roots(k: i64, alpha: &BigComplex, prec: usize) -> Result<RootSet, PencilError> {
    let ku = check_k(k)?;
    check_precision(prec)?;
    if alpha.is_zero() {
        return Err(PencilError::AlphaZero);
    }
    let alpha = BigComplex::new(alpha.re.with_prec(prec), alpha.im.with_prec(prec));
    let a0 = BigComplex::from_scalar(&singular_alpha(k), prec);
    let gap = (&alpha - &a0).abs();
    if gap <= &a0.abs() * &Real::pow2(-(prec as i64) / 2, prec) {
        return Err(PencilError::AlphaCritical);
    }
    let coeffs = branch_coeffs_complex(k, &alpha)?;
    let deflated = coeffs[1..].to_vec();

    let r = alpha.abs().to_f64();
    let kf = ku as f64;
    let inner = (4.0 * r * r).powf(1.0 / (4.0 * kf + 1.0));
    let middle = (r / 4.0).powf(1.0 / (2.0 * kf + 1.0));
    let mut seeds = ring(4 * ku as usize + 1, inner, 0.25, prec);
    seeds.extend(ring(2 * ku as usize + 1, middle, 0.6, prec));
    seeds.push(BigComplex::from_f64(1.0 / 64.0, 1e-3 / 64.0, prec));
    let out = aberth(&deflated, seeds, prec)?;

    let mut roots = vec![BigComplex::zero(prec)];
    roots.extend(out.roots);
    let cmax = coeffs.iter().map(|c| c.abs()).fold(Real::zero(prec), |a, b| a.max(&b));
    let denom = &Real::one(prec) + &cmax;
    let mut worst = Real::zero(prec);
    for z in &roots {
        let (p, _) = horner(&coeffs, z);
        worst = worst.max(&(&p.abs() / &denom));
    }
    Ok(RootSet {
        k,
        roots,
        residual_bound: worst,
        iterations: out.iterations,
        prec,
    })
}

/// Nearest-log-magnitude assignment of every root to the bands
/// `|α|^{2/(4k+1)}`, `|α|^{1/(2k+1)}` and `1/64`, without validation.
pub fn assign_bands(alpha: &BigComplex, set: &RootSet) -> Vec<RootClass> {
    let k = set.k as f64;
    let r = alpha.abs().to_f64();
    let centers = [
        (RootClass::Inner, r.ln() * 2.0 / (4.0 * k + 1.0)),
        (RootClass::Middle, r.ln() / (2.0 * k + 1.0)),
        (RootClass::Outer, (1.0f64 / 64.0).ln()),
    ];
    set.roots
        .iter()
        .map(|z| {
            if z.is_zero() {
                return RootClass::Zero;
            }
            let l = z.abs().to_f64().ln();
            centers
                .iter()
                .min_by(|a, b| (a.1 - l).abs().total_cmp(&(b.1 - l).abs()))
                .map(|c| c.0)
                .expect("three bands")
        })
        .collect()
}

/// Band assignment that refuses when `|α| > 10⁻³` or when the resulting
/// class sizes are not `1 / 4k+1 / 2k+1 / 1`.
pub fn classify_roots(alpha: &BigComplex, set: RootSet) -> Result<BranchData, PencilError> {
    let ku = set.k as usize;
    let r = alpha.abs().to_f64();
    if r > CLASSIFICATION_ALPHA_LIMIT {
        return Err(PencilError::ClassificationUnavailable(format!(
            "|alpha| = {r:e} exceeds {CLASSIFICATION_ALPHA_LIMIT:e}; bands are not separated"
        )));
    }
    let classes = assign_bands(alpha, &set);
    let data = BranchData { roots: set, classes };
    let sizes = data.class_sizes();
    let expect = [1, 4 * ku + 1, 2 * ku + 1, 1];
    if sizes != expect {
        return Err(PencilError::ClassificationUnavailable(format!(
            "bands overlap: class sizes {sizes:?}, expected {expect:?}"
        )));
    }
    Ok(data)
}

/// Outcome of the asymptotic root-structure test at one `α`.
#[derive(Clone, Debug)]
pub struct RootStructureReport {
    pub k: i64,
    pub sizes: [usize; 4],
    pub expected_sizes: [usize; 4],
    /// `|64·|outer| − 1|` for the root nearest `1/64`.
    pub outer_rel_err: f64,
    /// Extremes of `|t| / |α/4|^{1/(2k+1)}` over the middle class.
    pub middle_ratio: Option<(f64, f64)>,
    pub residual_log2: i64,
    pub sizes_ok: bool,
    pub outer_ok: bool,
    pub middle_ok: bool,
    pub residual_ok: bool,
    pub pass: bool,
}

/// Class sizes `1/(4k+1)/(2k+1)/1`, outer root within 1% of `1/64`, middle
/// moduli within a factor 2 of `|α/4|^{1/(2k+1)}`, residuals below `2⁻¹²⁸`.
pub fn root_structure_check(k: i64, alpha: &BigComplex, prec: usize) -> Result<RootStructureReport, PencilError> {
    let set = find_branch_roots(k, alpha, prec)?;
    let classes = assign_bands(alpha, &set);
    let ku = k as usize;
    let residual_log2 = set.residual_log2();
    let data = BranchData { roots: set, classes };
    let sizes = data.class_sizes();
    let expected_sizes = [1, 4 * ku + 1, 2 * ku + 1, 1];
    let outer_rel_err = data
        .roots
        .roots
        .iter()
        .map(|z| (z.abs().to_f64() * 64.0 - 1.0).abs())
        .fold(f64::INFINITY, f64::min);
    let target = (alpha.abs().to_f64() / 4.0).powf(1.0 / (2 * ku + 1) as f64);
    let ratios: Vec<f64> = data
        .moduli(RootClass::Middle)
        .iter()
        .map(|m| m.to_f64() / target)
        .collect();
    let middle_ratio = (!ratios.is_empty()).then(|| {
        (
            ratios.iter().copied().fold(f64::INFINITY, f64::min),
            ratios.iter().copied().fold(0.0, f64::max),
        )
    });
    let sizes_ok = sizes == expected_sizes;
    let outer_ok = sizes[RootClass::Outer as usize] == 1 && outer_rel_err < 0.01;
    let middle_ok = sizes_ok && middle_ratio.is_some_and(|(lo, hi)| lo > 0.5 && hi < 2.0);
    let residual_ok = residual_log2 < -128;
    Ok(RootStructureReport {
        k,
        sizes,
        expected_sizes,
        outer_rel_err,
        middle_ratio,
        residual_log2,
        sizes_ok,
        outer_ok,
        middle_ok,
        residual_ok,
        pass: sizes_ok && outer_ok && middle_ok && residual_ok,
    })
}

pub fn branch_points(k: i64, alpha: &BigComplex, prec: usize) -> Result<BranchData, PencilError> {
    let set = find_branch_roots(k, alpha, prec)?;
    classify_roots(alpha, set)
}
