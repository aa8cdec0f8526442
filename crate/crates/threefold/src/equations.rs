use std::collections::BTreeMap;

use exactcore::identity::{random_rational, seeded_rng};
use exactcore::{identity_check_fn, laurent_substitute, ExactPoly, ExactScalar, Monomial};

use crate::{check_k, ThreefoldError};

fn c(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationForm {
    /// `u₁+u₂+u₃+u₄−1−a·u₁²u₂^{2k+1}u₃^{2k+1}u₄^{4k+1}` in `(u₁..u₄, a)`.
    Torus,
    /// `−at^{2k+1}y²+yz+z²+1−xz+tx⁴` in `(x, y, z, t, a)`.
    Chart,
}

pub fn torus_vars() -> [&'static str; 5] {
    ["u1", "u2", "u3", "u4", "a"]
}

pub fn chart_vars() -> [&'static str; 5] {
    ["x", "y", "z", "t", "a"]
}

pub fn w_equation(k: i64, form: EquationForm) -> Result<ExactPoly, ThreefoldError> {
    let k = check_k(k)? as i32;
    Ok(match form {
        EquationForm::Torus => {
            let v = torus_vars();
            let m = |coef: i64, e: [i32; 5]| ExactPoly::monomial(&v, c(coef), &e);
            m(1, [1, 0, 0, 0, 0]) + m(1, [0, 1, 0, 0, 0]) + m(1, [0, 0, 1, 0, 0]) + m(1, [0, 0, 0, 1, 0])
                - m(1, [0, 0, 0, 0, 0])
                - m(1, [2, 2 * k + 1, 2 * k + 1, 4 * k + 1, 1])
        }
        EquationForm::Chart => {
            let v = chart_vars();
            let m = |coef: i64, e: [i32; 5]| ExactPoly::monomial(&v, c(coef), &e);
            m(-1, [0, 2, 0, 2 * k + 1, 1]) + m(1, [0, 1, 1, 0, 0]) + m(1, [0, 0, 2, 0, 0]) + m(1, [0, 0, 0, 0, 0])
                - m(1, [1, 0, 1, 0, 0])
                + m(1, [4, 0, 0, 1, 0])
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionReport {
    pub equal: bool,
    /// Monomial `m` with `chart = m · substituted` when one exists.
    pub factor: Option<Monomial>,
    /// The torus form after `u₁↦x⁻¹y, u₂↦x³z⁻¹t, u₃↦x⁻¹z⁻¹, u₄↦x⁻¹z`.
    pub substituted: ExactPoly,
    /// `chart − x·z·substituted`.
    pub difference: ExactPoly,
}

/// `p = m·q` for a monomial `m`, found from the leading terms and confirmed
/// exactly.
fn monomial_ratio(p: &ExactPoly, q: &ExactPoly) -> Option<Monomial> {
    let (ep, cp) = p.terms().last()?;
    let (eq, cq) = q.terms().last()?;
    let m = Monomial {
        coeff: cp / cq,
        exps: ep.iter().zip(eq).map(|(a, b)| a - b).collect(),
    };
    (q.mul_monomial(&m).ok()? == *p).then_some(m)
}

pub fn substitution_check(k: i64) -> Result<SubstitutionReport, ThreefoldError> {
    let torus = w_equation(k, EquationForm::Torus)?;
    let chart = w_equation(k, EquationForm::Chart)?;
    let v = chart_vars();
    let m = |e: [i32; 5]| ExactPoly::monomial(&v, c(1), &e);
    let images = BTreeMap::from([
        ("u1".to_string(), m([-1, 1, 0, 0, 0])),
        ("u2".to_string(), m([3, 0, -1, 1, 0])),
        ("u3".to_string(), m([-1, 0, -1, 0, 0])),
        ("u4".to_string(), m([-1, 0, 1, 0, 0])),
        ("a".to_string(), m([0, 0, 0, 0, 1])),
    ]);
    let substituted = laurent_substitute(&torus, &images)?;
    let xz = Monomial {
        coeff: c(1),
        exps: vec![1, 0, 1, 0, 0],
    };
    let difference = &chart - &substituted.mul_monomial(&xz)?;
    let factor = monomial_ratio(&chart, &substituted);
    Ok(SubstitutionReport {
        equal: difference.is_zero(),
        factor,
        substituted,
        difference,
    })
}

/// `Ŵ = −c·y₁² + y₁y₂ + y₂² + x₁⁴ − x₁x₂y₂ + t·x₂⁴` with `c = at^{2k+1}`.
fn what_exact(
    c_: &ExactScalar,
    t: &ExactScalar,
    x1: &ExactScalar,
    x2: &ExactScalar,
    y1: &ExactScalar,
    y2: &ExactScalar,
) -> ExactScalar {
    -(c_ * y1 * y1) + y1 * y2 + y2 * y2 + x1 * x1 * x1 * x1 - x1 * x2 * y2 + t * x2 * x2 * x2 * x2
}

/// `−δ₁y₁² + y₂² + x₁⁴ + t·x₂⁴ − (c/δ₁)(x₁x₂)²`.
fn n_exact(
    c_: &ExactScalar,
    d1: &ExactScalar,
    t: &ExactScalar,
    x1: &ExactScalar,
    x2: &ExactScalar,
    y1: &ExactScalar,
    y2: &ExactScalar,
) -> ExactScalar {
    let x12 = x1 * x2;
    let frac = (c_ / d1) * &x12 * &x12;
    -(d1 * y1 * y1) + y2 * y2 + x1 * x1 * x1 * x1 + t * x2 * x2 * x2 * x2 - frac
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewyVariant {
    Stated,
    /// `y₂ ↦ y₁/2 + y₂ + x₁x₂/2`.
    FlippedSign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChangeReport {
    /// `Ŵ(x, y) = N(x, φ(y))`: the new coordinates are `φ(y)`.
    pub holds: bool,
    /// `N(x, y) = Ŵ(x, φ(y))`: `φ` read as a pullback of the old coordinates.
    pub pullback_holds: bool,
    pub samples_used: usize,
    pub excluded: usize,
}

fn newy(
    variant: NewyVariant,
    d1: &ExactScalar,
    x1: &ExactScalar,
    x2: &ExactScalar,
    y1: &ExactScalar,
    y2: &ExactScalar,
) -> (ExactScalar, ExactScalar) {
    let half = ExactScalar::new(1, 2);
    let x12 = x1 * x2;
    let ny1 = &half * y1 - &x12 / &(d1 * &c(2));
    let tail = &half * &x12;
    let ny2 = match variant {
        NewyVariant::Stated => &half * y1 + y2 - tail,
        NewyVariant::FlippedSign => &half * y1 + y2 + tail,
    };
    (ny1, ny2)
}

/// Sample layout `(x₁, x₂, y₁, y₂, t, a)`; points with `δ₁ = 0` are excluded.
fn fibre_consts(k: u64, p: &[ExactScalar]) -> Option<(ExactScalar, ExactScalar)> {
    let c_ = &p[5] * &p[4].pow(2 * k as i64 + 1)?;
    let d1 = &c_ * &c(4) + c(1);
    (!d1.is_zero()).then_some((c_, d1))
}

pub fn coordchange_check(k: i64, seed: u64) -> Result<CoordChangeReport, ThreefoldError> {
    coordchange_check_with(k, seed, NewyVariant::Stated)
}

/// Seeded exact-evaluation comparison of the fibre equation of `Ŵ` with the
/// diagonalized form after the coordinate change, in both directions.
pub fn coordchange_check_with(k: i64, seed: u64, variant: NewyVariant) -> Result<CoordChangeReport, ThreefoldError> {
    let ku = check_k(k)?;
    let forward = identity_check_fn(
        6,
        |p| {
            let (c_, _) = fibre_consts(ku, p)?;
            Some(what_exact(&c_, &p[4], &p[0], &p[1], &p[2], &p[3]))
        },
        |p| {
            let (c_, d1) = fibre_consts(ku, p)?;
            let (ny1, ny2) = newy(variant, &d1, &p[0], &p[1], &p[2], &p[3]);
            Some(n_exact(&c_, &d1, &p[4], &p[0], &p[1], &ny1, &ny2))
        },
        false,
        exactcore::identity::DEFAULT_TRIALS,
        seed,
    )?;
    let pullback = identity_check_fn(
        6,
        |p| {
            let (c_, d1) = fibre_consts(ku, p)?;
            Some(n_exact(&c_, &d1, &p[4], &p[0], &p[1], &p[2], &p[3]))
        },
        |p| {
            let (c_, d1) = fibre_consts(ku, p)?;
            let (ny1, ny2) = newy(variant, &d1, &p[0], &p[1], &p[2], &p[3]);
            Some(what_exact(&c_, &p[4], &p[0], &p[1], &ny1, &ny2))
        },
        false,
        exactcore::identity::DEFAULT_TRIALS,
        seed,
    )?;
    Ok(CoordChangeReport {
        holds: forward.equal,
        pullback_holds: pullback.equal,
        samples_used: forward.samples_used,
        excluded: forward.excluded,
    })
}

/// The toric variety `G′` (weight matrix over `t₁ t₂ v₁ v₂ z₁ z₂ z`) and the
/// hypersurface `W′ ⊂ G′`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicBundleSpec {
    pub k: u64,
    pub weight_matrix: [[i64; 7]; 3],
    /// In `(t1, t2, v1, v2, z1, z2, z, a)`.
    pub equation: ExactPoly,
    /// `4a·t₁^{2k+1} + t₂^{2k+1}`.
    pub delta1_tilde: ExactPoly,
}

impl ConicBundleSpec {
    pub const VARS: [&'static str; 8] = ["t1", "t2", "v1", "v2", "z1", "z2", "z", "a"];

    /// Multidegree of every term under the weight matrix; `Some` iff all agree.
    pub fn multidegree(&self) -> Option<[i64; 3]> {
        let mut out: Option<[i64; 3]> = None;
        for (e, _) in self.equation.terms() {
            let mut d = [0i64; 3];
            for (row, w) in self.weight_matrix.iter().enumerate() {
                d[row] = (0..7).map(|i| w[i] * e[i] as i64).sum();
            }
            match out {
                None => out = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        out
    }

    /// Restriction to the chart `t₂ = v₂ = z = 1`, in `(t1, v1, z1, z2, a)`.
    pub fn chart(&self) -> Result<ExactPoly, ThreefoldError> {
        let mut p = self.equation.clone();
        for name in ["t2", "v2", "z"] {
            p = p.specialize(name, &c(1))?.drop_var(name)?;
        }
        Ok(p)
    }
}

pub fn conic_bundle_spec(k: i64) -> Result<ConicBundleSpec, ThreefoldError> {
    let ku = check_k(k)?;
    let ki = ku as i32;
    let kk = ku as i64;
    let v = ConicBundleSpec::VARS;
    let m = |coef: i64, e: [i32; 8]| ExactPoly::monomial(&v, c(coef), &e);
    let p = 2 * ki + 1;
    let delta1_tilde = m(4, [p, 0, 0, 0, 0, 0, 0, 1]) + m(1, [0, p, 0, 0, 0, 0, 0, 0]);
    let t2 = m(1, [0, 1, 0, 0, 0, 0, 0, 0]);
    let v1 = m(1, [0, 0, 1, 0, 0, 0, 0, 0]);
    let v2 = m(1, [0, 0, 0, 1, 0, 0, 0, 0]);
    let t1t2 = m(1, [1, 1, 0, 0, 0, 0, 0, 0]);
    let inner = &delta1_tilde * &(&v1 * &v1) - m(1, [p, 1, 1, 1, 0, 0, 0, 1]) + &t1t2 * &delta1_tilde * (&v2 * &v2);
    let equation = m(-1, [0, 0, 0, 0, 2, 0, 0, 0])
        + &t2 * &delta1_tilde * m(1, [0, 0, 0, 0, 0, 2, 0, 0])
        + m(1, [0, 0, 1, 1, 0, 0, 2, 0]) * inner;
    let weight_matrix = [
        [1, 1, 0, -1, 0, -kk - 1, -kk],
        [0, 0, 1, 1, 0, 0, -2],
        [0, 0, 0, 0, 1, 1, 1],
    ];
    Ok(ConicBundleSpec {
        k: ku,
        weight_matrix,
        equation,
        delta1_tilde,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicImage {
    /// `v₁, z₁, z₂ ↦ x₁², δ₁x₁y₁, x₁y₂`.
    Stated,
    /// `z₁ ↦ x₁y₁`.
    MissingDelta1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundleReport {
    pub holds: bool,
    /// `(i, j)` with `W′(image) = δ₁^i·x₁^j·Ŵ` at every sample.
    pub factor_exponents: Option<(i32, i32)>,
    pub samples_used: usize,
    pub excluded: usize,
}

const FACTOR_SEARCH: i32 = 4;

pub fn conic_bundle_check(k: i64, seed: u64) -> Result<ConicBundleReport, ThreefoldError> {
    conic_bundle_check_with(k, seed, ConicImage::Stated)
}

/// Sample layout `(x₁, y₁, y₂, t, a)`; `δ₁ = 0` and `x₁ = 0` are excluded.
pub fn conic_bundle_check_with(k: i64, seed: u64, image: ConicImage) -> Result<ConicBundleReport, ThreefoldError> {
    let ku = check_k(k)?;
    let consts = |p: &[ExactScalar]| -> Option<(ExactScalar, ExactScalar)> {
        if p[0].is_zero() {
            return None;
        }
        let c_ = &p[4] * &p[3].pow(2 * ku as i64 + 1)?;
        let d1 = &c_ * &c(4) + c(1);
        (!d1.is_zero()).then_some((c_, d1))
    };
    let lhs = |p: &[ExactScalar]| -> Option<ExactScalar> {
        let (c_, d1) = consts(p)?;
        let (x1, y1, y2, t) = (&p[0], &p[1], &p[2], &p[3]);
        let v1 = x1 * x1;
        let z1 = match image {
            ConicImage::Stated => &d1 * x1 * y1,
            ConicImage::MissingDelta1 => x1 * y1,
        };
        let z2 = x1 * y2;
        let cubic = &d1 * &v1 * &v1 - &c_ * &v1 + t * &d1;
        Some(-(&z1 * &z1) + &d1 * &z2 * &z2 + &v1 * &cubic)
    };
    let rhs = |p: &[ExactScalar]| -> Option<ExactScalar> {
        let (c_, d1) = consts(p)?;
        let (x1, y1, y2, t) = (&p[0], &p[1], &p[2], &p[3]);
        let x2 = x1 * x1;
        Some(-(&d1 * y1 * y1) + y2 * y2 + &x2 * &x2 - (&c_ / &d1) * &x2 + t)
    };

    let mut rng = seeded_rng(seed.wrapping_add(0x9e37_79b9));
    let mut exps = None;
    for _ in 0..exactcore::identity::DEFAULT_TRIALS {
        let p: Vec<ExactScalar> = (0..5).map(|_| random_rational(&mut rng)).collect();
        let (Some(l), Some(r)) = (lhs(&p), rhs(&p)) else {
            continue;
        };
        if l.is_zero() || r.is_zero() {
            continue;
        }
        let (_, d1) = consts(&p).expect("rhs defined");
        let ratio = l / r;
        exps = factor_search(&ratio, &d1, &p[0]);
        break;
    }
    let Some((i, j)) = exps else {
        return Ok(ConicBundleReport {
            holds: false,
            factor_exponents: None,
            samples_used: 0,
            excluded: 0,
        });
    };
    let out = identity_check_fn(
        5,
        lhs,
        |p| {
            let (_, d1) = consts(p)?;
            Some(rhs(p)? * d1.pow(i as i64)? * p[0].pow(j as i64)?)
        },
        false,
        exactcore::identity::DEFAULT_TRIALS,
        seed,
    )?;
    Ok(ConicBundleReport {
        holds: out.equal,
        factor_exponents: out.equal.then_some((i, j)),
        samples_used: out.samples_used,
        excluded: out.excluded,
    })
}

fn factor_search(ratio: &ExactScalar, d1: &ExactScalar, x1: &ExactScalar) -> Option<(i32, i32)> {
    for i in -FACTOR_SEARCH..=FACTOR_SEARCH {
        for j in -FACTOR_SEARCH..=FACTOR_SEARCH {
            let v = d1.pow(i as i64)? * x1.pow(j as i64)?;
            if &v == ratio {
                return Some((i, j));
            }
        }
    }
    None
}
