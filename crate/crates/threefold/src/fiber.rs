use exactcore::{check_precision, BigComplex, ExactScalar, Real};
use pencil::aberth;

use crate::{check_k, ThreefoldError};

/// Coordinates on `P(1,1,2,2)`: `(x₁, x₂, y₁, y₂)`.
pub type Point = [BigComplex; 4];

#[derive(Clone, Debug)]
pub enum FiberSelector {
    Delta1Root,
    Delta2Root,
    Regular(BigComplex),
}

/// Which equation a point is expressed against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// The fibre of `Ŵ`.
    Chart,
    /// The diagonalized fibre equation, defined where `δ₁ ≠ 0`.
    Normal,
}

#[derive(Clone, Debug)]
pub struct SpecialPoint {
    pub name: String,
    pub frame: Frame,
    pub coords: Point,
    pub residual: Real,
    /// Max-norm of the gradient, for points expected to be singular.
    pub gradient_norm: Option<Real>,
    pub passes: bool,
}

#[derive(Clone, Debug)]
pub struct FiberGeometry {
    pub k: u64,
    pub t: BigComplex,
    pub delta1: BigComplex,
    pub delta2: BigComplex,
    pub nu_plus: Option<BigComplex>,
    pub nu_minus: Option<BigComplex>,
    pub points: Vec<SpecialPoint>,
    /// The same points in the literal printed form, residuals reported only.
    pub printed: Vec<SpecialPoint>,
    pub tolerance: Real,
    pub ok: bool,
}

struct Consts {
    prec: usize,
    t: BigComplex,
    c: BigComplex,
    d1: BigComplex,
}

impl Consts {
    fn new(k: u64, a: &ExactScalar, t: &BigComplex, prec: usize) -> Self {
        let t = BigComplex::new(t.re.with_prec(prec), t.im.with_prec(prec));
        let c = t.powi(2 * k as u32 + 1).scale(&Real::from_scalar(a, prec));
        let d1 = &c.scale(&Real::from_i64(4, prec)) + &BigComplex::one(prec);
        Self { prec, t, c, d1 }
    }

    fn n(&self, v: i64) -> BigComplex {
        BigComplex::from_real(Real::from_i64(v, self.prec))
    }

    /// `δ₂ = c² − 4tδ₁²`.
    fn d2(&self) -> BigComplex {
        &(&self.c * &self.c) - &(&(&self.n(4) * &self.t) * &(&self.d1 * &self.d1))
    }
}

fn max_abs(vals: &[BigComplex], prec: usize) -> Real {
    vals.iter().fold(Real::zero(prec), |m, v| m.max(&v.abs()))
}

fn sq(z: &BigComplex) -> BigComplex {
    z * z
}

fn what_eval(s: &Consts, p: &Point) -> BigComplex {
    let [x1, x2, y1, y2] = p;
    let mut f = -&(&s.c * &sq(y1));
    f = &f + &(y1 * y2);
    f = &f + &sq(y2);
    f = &f + &sq(&sq(x1));
    f = &f - &(&(x1 * x2) * y2);
    &f + &(&s.t * &sq(&sq(x2)))
}

fn what_grad(s: &Consts, p: &Point) -> [BigComplex; 4] {
    let [x1, x2, y1, y2] = p;
    let four = s.n(4);
    let two = s.n(2);
    [
        &(&four * &(&sq(x1) * x1)) - &(x2 * y2),
        &(&(&four * &s.t) * &(&sq(x2) * x2)) - &(x1 * y2),
        &(&(&two * &s.c) * &(-y1)) + y2,
        &(y1 + &(&two * y2)) - &(x1 * x2),
    ]
}

fn n_eval(s: &Consts, p: &Point) -> BigComplex {
    let [x1, x2, y1, y2] = p;
    let mut f = -&(&s.d1 * &sq(y1));
    f = &f + &sq(y2);
    f = &f + &sq(&sq(x1));
    f = &f + &(&s.t * &sq(&sq(x2)));
    &f - &(&(&s.c / &s.d1) * &sq(&(x1 * x2)))
}

fn n_grad(s: &Consts, p: &Point) -> [BigComplex; 4] {
    let [x1, x2, y1, y2] = p;
    let four = s.n(4);
    let two = s.n(2);
    let r = &(&two * &s.c) / &s.d1;
    [
        &(&four * &(&sq(x1) * x1)) - &(&r * &(x1 * &sq(x2))),
        &(&(&four * &s.t) * &(&sq(x2) * x2)) - &(&r * &(&sq(x1) * x2)),
        -&(&(&two * &s.d1) * y1),
        &two * y2,
    ]
}

/// Value of the `Ŵ` fibre equation `−at^{2k+1}y₁²+y₁y₂+y₂²+x₁⁴−x₁x₂y₂+tx₂⁴`.
pub fn what_equation(k: i64, a: &ExactScalar, t: &BigComplex, p: &Point) -> Result<BigComplex, ThreefoldError> {
    let s = Consts::new(check_k(k)?, a, t, t.prec());
    Ok(what_eval(&s, p))
}

pub fn what_gradient(k: i64, a: &ExactScalar, t: &BigComplex, p: &Point) -> Result<[BigComplex; 4], ThreefoldError> {
    let s = Consts::new(check_k(k)?, a, t, t.prec());
    Ok(what_grad(&s, p))
}

/// Value of `−δ₁y₁²+y₂²+x₁⁴+tx₂⁴−(at^{2k+1}/δ₁)(x₁x₂)²`.
pub fn n_equation(k: i64, a: &ExactScalar, t: &BigComplex, p: &Point) -> Result<BigComplex, ThreefoldError> {
    let s = Consts::new(check_k(k)?, a, t, t.prec());
    Ok(n_eval(&s, p))
}

pub fn n_gradient(k: i64, a: &ExactScalar, t: &BigComplex, p: &Point) -> Result<[BigComplex; 4], ThreefoldError> {
    let s = Consts::new(check_k(k)?, a, t, t.prec());
    Ok(n_grad(&s, p))
}

fn seeds(n: usize, radius: f64, prec: usize) -> Vec<BigComplex> {
    (0..n)
        .map(|i| {
            let th = std::f64::consts::TAU * (i as f64 + 0.3) / n as f64;
            BigComplex::from_f64(radius * th.cos(), radius * th.sin(), prec)
        })
        .collect()
}

fn sorted(mut roots: Vec<BigComplex>) -> Vec<BigComplex> {
    roots.sort_by(|x, y| {
        let (a, b) = (x.to_f64_pair(), y.to_f64_pair());
        a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
    });
    roots
}

fn solve(coeffs: Vec<BigComplex>, radius: f64, prec: usize) -> Result<Vec<BigComplex>, ThreefoldError> {
    let n = coeffs.len() - 1;
    Ok(sorted(aberth(&coeffs, seeds(n, radius, prec), prec)?.roots))
}

/// The `2k+1` roots of `δ₁ = 4at^{2k+1}+1`, sorted by real then imaginary part.
pub fn delta1_roots(k: i64, a: &ExactScalar, prec: usize) -> Result<Vec<BigComplex>, ThreefoldError> {
    let ku = check_k(k)? as usize;
    check_precision(prec)?;
    if a.is_zero() {
        return Err(ThreefoldError::AZero);
    }
    let mut co = vec![BigComplex::zero(prec); 2 * ku + 2];
    co[0] = BigComplex::one(prec);
    co[2 * ku + 1] = BigComplex::from_scalar(&(a * &ExactScalar::from_int(4)), prec);
    let r = (0.25 / a.to_f64().abs()).powf(1.0 / (2 * ku + 1) as f64);
    solve(co, r, prec)
}

/// The `4k+2` nonzero roots of `δ₂ = a²t^{4k+2} − 4tδ₁²`.
pub fn delta2_roots(k: i64, a: &ExactScalar, prec: usize) -> Result<Vec<BigComplex>, ThreefoldError> {
    let ku = check_k(k)? as usize;
    check_precision(prec)?;
    if a.is_zero() {
        return Err(ThreefoldError::AZero);
    }
    let q = |x: ExactScalar| BigComplex::from_scalar(&x, prec);
    let mut co = vec![BigComplex::zero(prec); 4 * ku + 3];
    co[0] = q(ExactScalar::from_int(-4));
    co[2 * ku + 1] = q(a * &ExactScalar::from_int(-32));
    co[4 * ku + 1] = q(a * a);
    co[4 * ku + 2] = q(a * a * ExactScalar::from_int(-64));
    let r = (1.0 / (16.0 * a.to_f64().powi(2))).powf(1.0 / (4 * ku + 2) as f64);
    solve(co, r, prec)
}

fn tolerance(prec: usize) -> Real {
    Real::pow2(-(prec as i64) / 4, prec)
}

fn point(s: &Consts, name: &str, frame: Frame, coords: Point, singular: bool, tol: &Real) -> SpecialPoint {
    let (residual, grad) = match frame {
        Frame::Chart => (
            what_eval(s, &coords).abs(),
            singular.then(|| max_abs(&what_grad(s, &coords), s.prec)),
        ),
        Frame::Normal => (
            n_eval(s, &coords).abs(),
            singular.then(|| max_abs(&n_grad(s, &coords), s.prec)),
        ),
    };
    let passes = &residual < tol && grad.as_ref().is_none_or(|g| g < tol);
    SpecialPoint {
        name: name.to_string(),
        frame,
        coords,
        residual,
        gradient_norm: grad,
        passes,
    }
}

/// `ν± = √((c ± √δ₂)/(2δ₁))`.
fn nus(s: &Consts) -> (BigComplex, BigComplex) {
    let sd2 = s.d2().sqrt();
    let den = &s.n(2) * &s.d1;
    ((&(&s.c + &sd2) / &den).sqrt(), (&(&s.c - &sd2) / &den).sqrt())
}

/// Special points of the fibre over a root of `δ₁`, a root of `δ₂`, or a
/// regular value `t`.
pub fn fiber_special_points(
    k: i64,
    a: &ExactScalar,
    which: FiberSelector,
    prec: usize,
) -> Result<FiberGeometry, ThreefoldError> {
    let ku = check_k(k)?;
    check_precision(prec)?;
    if a.is_zero() {
        return Err(ThreefoldError::AZero);
    }
    let t = match &which {
        FiberSelector::Delta1Root => delta1_roots(k, a, prec)?.remove(0),
        FiberSelector::Delta2Root => delta2_roots(k, a, prec)?.remove(0),
        FiberSelector::Regular(t) => t.clone(),
    };
    let s = Consts::new(ku, a, &t, prec);
    let tol = tolerance(prec);
    let z = BigComplex::zero(prec);
    let one = BigComplex::one(prec);
    let d2 = s.d2();
    let mut points = Vec::new();
    let mut printed = Vec::new();
    let (mut nu_plus, mut nu_minus) = (None, None);
    match which {
        FiberSelector::Delta1Root => {
            points.push(point(
                &s,
                "p_t",
                Frame::Chart,
                [z.clone(), z.clone(), s.n(-2), one.clone()],
                true,
                &tol,
            ));
        }
        FiberSelector::Delta2Root => {
            let nu = (&s.c / &(&s.n(2) * &s.d1)).sqrt();
            let y1 = &nu / &s.d1;
            let y2 = &(&(&s.n(2) * &s.c) * &nu) / &s.d1;
            points.push(point(&s, "q_t", Frame::Chart, [nu, one.clone(), y1, y2], true, &tol));
            let x2 = (&(&s.n(2) * &s.d1) / &s.c).sqrt();
            let lit = [one.clone(), x2, s.d1.recip(), &(&s.n(2) * &s.c) / &s.d1];
            printed.push(point(&s, "q_t", Frame::Chart, lit, true, &tol));
        }
        FiberSelector::Regular(_) => {
            if s.d1.abs() < tol || d2.abs() < tol {
                return Err(ThreefoldError::CriticalFibre(format!(
                    "|δ₁| = {}, |δ₂| = {}",
                    s.d1.abs().to_sci(6),
                    d2.abs().to_sci(6)
                )));
            }
            let r = s.d1.sqrt();
            let half = BigComplex::from_scalar(&ExactScalar::new(1, 2), prec);
            points.push(point(
                &s,
                "p_t+",
                Frame::Normal,
                [z.clone(), z.clone(), one.clone(), r.clone()],
                false,
                &tol,
            ));
            points.push(point(
                &s,
                "p_t-",
                Frame::Normal,
                [z.clone(), z.clone(), one.clone(), -&r],
                false,
                &tol,
            ));
            let (np, nm) = nus(&s);
            points.push(point(
                &s,
                "q_t+",
                Frame::Normal,
                [np.clone(), one.clone(), z.clone(), z.clone()],
                false,
                &tol,
            ));
            points.push(point(
                &s,
                "q_t-",
                Frame::Normal,
                [nm.clone(), one.clone(), z.clone(), z.clone()],
                false,
                &tol,
            ));
            let rh = &r * &half;
            printed.push(point(
                &s,
                "p_t+",
                Frame::Normal,
                [z.clone(), z.clone(), one.clone(), rh.clone()],
                false,
                &tol,
            ));
            printed.push(point(
                &s,
                "p_t-",
                Frame::Normal,
                [z.clone(), z.clone(), one.clone(), -&rh],
                false,
                &tol,
            ));
            nu_plus = Some(np);
            nu_minus = Some(nm);
        }
    }
    let ok = points.iter().all(|p| p.passes);
    Ok(FiberGeometry {
        k: ku,
        t: s.t.clone(),
        delta1: s.d1.clone(),
        delta2: d2,
        nu_plus,
        nu_minus,
        points,
        printed,
        tolerance: tol,
        ok,
    })
}

#[derive(Clone, Debug)]
pub struct LineCheck {
    pub name: String,
    pub residuals: Vec<Real>,
    pub max_residual: Real,
    pub passes: bool,
}

#[derive(Clone, Debug)]
pub struct LinesReport {
    pub t: BigComplex,
    pub nu_plus: BigComplex,
    pub nu_minus: BigComplex,
    /// `|ν₊ − ν₋|`; small near a root of `δ₂`, where the lines collide pairwise.
    pub nu_gap: Real,
    pub collision: bool,
    pub lines: Vec<LineCheck>,
    /// `C_{t,2}` read literally as `y₂ − √δ₁y₁ = x₁²ν₋²x₂² = 0`.
    pub printed_c2_residual: Real,
    pub tolerance: Real,
    pub ok: bool,
}

const LINE_SAMPLES: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (2, -3), (-1, 5)];

/// The four lines `y₂ = ±√δ₁·y₁, x₁ = ν±·x₂` on the diagonalized fibre,
/// each sampled at five points.
pub fn lines_on_fiber(k: i64, a: &ExactScalar, t: &BigComplex, prec: usize) -> Result<LinesReport, ThreefoldError> {
    let ku = check_k(k)?;
    check_precision(prec)?;
    if a.is_zero() {
        return Err(ThreefoldError::AZero);
    }
    let s = Consts::new(ku, a, t, prec);
    let tol = tolerance(prec);
    if s.d1.abs() < tol {
        return Err(ThreefoldError::CriticalFibre(format!(
            "|δ₁| = {}",
            s.d1.abs().to_sci(6)
        )));
    }
    let r = s.d1.sqrt();
    let (np, nm) = nus(&s);
    let specs = [
        ("C_t1", &r, &np),
        ("C_t2", &r, &nm),
        ("C_t3", &-&r, &np),
        ("C_t4", &-&r, &nm),
    ];
    let mut lines = Vec::new();
    for (name, root, nu) in specs {
        let residuals: Vec<Real> = LINE_SAMPLES
            .iter()
            .map(|&(sv, uv)| {
                let (sv, uv) = (s.n(sv), s.n(uv));
                n_eval(&s, &[nu * &sv, sv.clone(), uv.clone(), root * &uv]).abs()
            })
            .collect();
        let max_residual = residuals.iter().fold(Real::zero(prec), |m, x| m.max(x));
        let passes = max_residual < tol;
        lines.push(LineCheck {
            name: name.to_string(),
            residuals,
            max_residual,
            passes,
        });
    }
    let printed_c2_residual = LINE_SAMPLES.iter().fold(Real::zero(prec), |m, &(sv, uv)| {
        let (sv, uv) = (s.n(sv), s.n(uv));
        m.max(&n_eval(&s, &[BigComplex::zero(prec), sv, uv.clone(), &r * &uv]).abs())
    });
    let nu_gap = (&np - &nm).abs();
    let collision = nu_gap < tol;
    let ok = lines.iter().all(|l| l.passes);
    Ok(LinesReport {
        t: s.t.clone(),
        nu_plus: np,
        nu_minus: nm,
        nu_gap,
        collision,
        lines,
        printed_c2_residual,
        tolerance: tol,
        ok,
    })
}

/// Point counts of the two restrictions `x₁ = x₂ = 0` and `y₁ = y₂ = 0` of
/// the fibre over `t`, as the number of distinct roots of `y² = δ₁` and of
/// `δ₁w² − cw + tδ₁ = 0` (`w = (x₁/x₂)²`). The second is `None` where
/// `δ₁ = 0`.
pub fn cover_fiber_sizes(
    k: i64,
    a: &ExactScalar,
    t: &BigComplex,
    prec: usize,
) -> Result<(usize, Option<usize>), ThreefoldError> {
    let ku = check_k(k)?;
    check_precision(prec)?;
    let s = Consts::new(ku, a, t, prec);
    let tol = tolerance(prec);
    let distinct = |r1: &BigComplex, r2: &BigComplex| -> usize {
        let scale = &Real::one(prec) + &r1.abs().max(&r2.abs());
        if (r1 - r2).abs() > &tol * &scale {
            2
        } else {
            1
        }
    };
    let r = s.d1.sqrt();
    let n1 = distinct(&r, &-&r);
    if s.d1.abs() < tol {
        return Ok((n1, None));
    }
    let (np, nm) = nus(&s);
    let n2 = distinct(&sq(&np), &sq(&nm));
    Ok((n1, Some(n2)))
}
