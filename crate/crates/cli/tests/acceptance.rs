//! Acceptance suite: one PASS/FAIL line per criterion. Supplementary lines
//! (marked SUPP) never change the verdict of the criterion they accompany.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use exactcore::identity::{random_rational, seeded_rng};
use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar, Real};
use hypergeom::{
    build_operator, coefficient_identity_sides, ifun_coefficients, jk_hypersurface, jk_singular_value_closed_form,
    m_alpha_product, p0_value, p1_value, singular_value, WeightedHypersurface,
};
use periods::{main_theorem_check, Branch, QuadratureOptions};
use threefold::{
    chart_vars, conic_bundle_check_with, coordchange_check_with, count_w, fiber_special_points, lines_on_fiber,
    substitution_check, ConicImage, CountMethod, FiberSelector, NewyVariant, ThreefoldError,
};
use toric::{expected_jk_vertices, expected_thresholds, final_fan_check, jk_polytope, mmp_thresholds, normal_fan};

const PREC: usize = 256;
const PERIOD_AGREEMENT_EXP: i64 = -30;
const PERIOD_ERROR_EXP: i64 = -32;
const ROOT_ALPHA_EXP: i64 = -6;
const OUTER_ROOT: f64 = 1.0 / 64.0;
const OUTER_REL_TOL: f64 = 0.01;
const MIDDLE_FACTOR: f64 = 2.0;
const ROOT_RESIDUAL_LOG2: i64 = -128;
const FIBER_RESIDUAL_LOG2: i64 = -64;
const IDENTITY_SAMPLES: usize = 20;
const FIBER_SAMPLES: usize = 10;
const SEED: u64 = 0;

const IDENTITY_RUNTIME: Duration = Duration::from_secs(60);
const PERIOD_RUNTIME: Duration = Duration::from_secs(300);
const TORIC_RUNTIME: Duration = Duration::from_secs(60);

fn pow10(e: i64) -> ExactScalar {
    ExactScalar::from(10).pow(e).unwrap()
}

fn real10(e: i64) -> Real {
    Real::from_scalar(&pow10(e), PREC)
}

fn rotated(r: &ExactScalar, n: i64) -> BigComplex {
    let theta = &Real::pi(PREC) / &Real::from_i64(n, PREC);
    BigComplex::from_polar(&Real::from_scalar(r, PREC), &theta)
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn report(tag: &str, title: &str, start: Instant, v: &Verdict) {
    let word = if v.pass { "PASS" } else { "FAIL" };
    println!(
        "{word} {tag:<4} {title} [{:.1}s] {}",
        start.elapsed().as_secs_f64(),
        v.detail
    );
}

fn c1() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 1..=6 {
        for j in 0..=40 {
            match coefficient_identity_sides(k, j) {
                Ok((l, r)) if l == r => {}
                other => bad.push(format!("k={k} j={j}: {other:?}")),
            }
        }
    }
    let t = start.elapsed();
    verdict(
        bad.is_empty() && t < IDENTITY_RUNTIME,
        format!("246 pairs, mismatches {bad:?}, runtime {t:.1?}"),
    )
}

fn period_case(k: i64, alpha: &BigComplex, branch: Branch) -> Result<(bool, String), String> {
    let mut opts = QuadratureOptions::new(PREC, real10(PERIOD_ERROR_EXP));
    opts.branch = branch;
    let r = main_theorem_check(k, alpha, &opts).map_err(|e| e.to_string())?;
    let ok = r.agreement < real10(PERIOD_AGREEMENT_EXP) && r.quadrature.error_estimate < real10(PERIOD_ERROR_EXP);
    Ok((
        ok,
        format!(
            "agreement {} error {}",
            r.agreement.to_sci(4),
            r.quadrature.error_estimate.to_sci(4)
        ),
    ))
}

fn c2(supp: &mut Vec<(String, Verdict)>) -> Verdict {
    let start = Instant::now();
    let a = pow10(-3);
    let cases = [
        ("k=1 a=1e-3", 1, BigComplex::from_scalar(&a, PREC)),
        ("k=1 a=1e-3*e^(i*pi/5)", 1, rotated(&a, 5)),
        ("k=2 a=1e-3", 2, BigComplex::from_scalar(&a, PREC)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, k, alpha) in &cases {
        match period_case(*k, alpha, Branch::Principal) {
            Ok((ok, d)) => {
                pass &= ok;
                parts.push(format!("{label}: {d}"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{label}: error {e}"));
            }
        }
        match period_case(*k, alpha, Branch::Flipped) {
            Ok((false, _)) => parts.push(format!("{label} flipped: rejected")),
            Ok((true, _)) => {
                pass = false;
                parts.push(format!("{label} flipped: accepted"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{label} flipped: error {e}"));
            }
        }
    }

    let b9 = pow10(-9);
    let supp_cases = [
        ("k=1 a=1e-9", 1, BigComplex::from_scalar(&b9, PREC)),
        ("k=1 a=1e-9*e^(i*pi/5)", 1, rotated(&b9, 5)),
        ("k=2 a=1e-15", 2, BigComplex::from_scalar(&pow10(-15), PREC)),
    ];
    for (label, k, alpha) in &supp_cases {
        let main = period_case(*k, alpha, Branch::Principal);
        let flipped = period_case(*k, alpha, Branch::Flipped);
        let ok = matches!(main, Ok((true, _))) && matches!(flipped, Ok((false, _)));
        let d = match main {
            Ok((_, d)) => d,
            Err(e) => e,
        };
        supp.push((
            format!("2    period {label}"),
            verdict(
                ok,
                format!("{d}; flipped branch rejected: {}", matches!(flipped, Ok((false, _)))),
            ),
        ));
    }
    let t = start.elapsed();
    verdict(
        pass && t < PERIOD_RUNTIME,
        format!("{}; runtime {t:.1?}", parts.join("; ")),
    )
}

fn c3() -> Verdict {
    let mut bad = Vec::new();
    for k in 1..=10 {
        let order = build_operator(&jk_hypersurface(k).unwrap()).order;
        if order != 6 * k as usize + 2 {
            bad.push(format!("k={k}: {order}"));
        }
    }
    let quintic = build_operator(&WeightedHypersurface::new(vec![1, 1, 1, 1, 1], 5).unwrap()).order;
    verdict(
        bad.is_empty() && quintic == 4,
        format!("JK orders 6k+2 for k<=10, mismatches {bad:?}; (1,1,1,1,1;5) order {quintic}"),
    )
}

/// `c_j·P₀(j) + c_{j−1}·P₁(j−1) = 0` for `1 ≤ j ≤ 60`, and `c_0·P₀(0) = 0`.
fn annihilated(h: &WeightedHypersurface, jmax: u64) -> Option<u64> {
    let c = ifun_coefficients(h, jmax);
    if !(&c[0] * &ExactScalar::from_int(p0_value(h, 0))).is_zero() {
        return Some(0);
    }
    (1..=jmax).find(|&j| {
        let a = &c[j as usize] * &ExactScalar::from_int(p0_value(h, j as i64));
        let b = &c[j as usize - 1] * &ExactScalar::from_int(p1_value(h, j as i64 - 1));
        !(a + b).is_zero()
    })
}

fn c4() -> Verdict {
    let mut systems: Vec<(String, WeightedHypersurface)> = (1..=3)
        .map(|k| (format!("JK k={k}"), jk_hypersurface(k).unwrap()))
        .collect();
    for (w, d) in [(vec![1, 1, 1, 1, 1], 5), (vec![1, 1, 1, 2], 4)] {
        systems.push((format!("{w:?};{d}"), WeightedHypersurface::new(w, d).unwrap()));
    }
    let bad: Vec<String> = systems
        .iter()
        .filter_map(|(name, h)| annihilated(h, 60).map(|j| format!("{name} at j={j}")))
        .collect();
    verdict(bad.is_empty(), format!("5 systems, j<=60, failures {bad:?}"))
}

fn c5() -> Verdict {
    let mut bad = Vec::new();
    for k in 1..=10 {
        let sv = singular_value(&jk_hypersurface(k).unwrap());
        if sv != jk_singular_value_closed_form(k).unwrap() {
            bad.push(format!("k={k}: closed form"));
        }
        if !m_alpha_product(k).unwrap().is_one() {
            bad.push(format!("k={k}: M*alpha0"));
        }
    }
    verdict(bad.is_empty(), format!("k<=10, failures {bad:?}"))
}

fn roots_case(k: i64, e: i64) -> Verdict {
    let alpha = BigComplex::from_scalar(&pow10(e), PREC);
    match pencil::root_structure_check(k, &alpha, PREC) {
        Err(err) => verdict(false, format!("k={k} a=1e{e}: error {err}")),
        Ok(r) => {
            let middle_ok = r
                .middle_ratio
                .is_some_and(|(lo, hi)| lo > 1.0 / MIDDLE_FACTOR && hi < MIDDLE_FACTOR);
            let ok = r.sizes == r.expected_sizes
                && r.outer_rel_err < OUTER_REL_TOL
                && middle_ok
                && r.residual_log2 < ROOT_RESIDUAL_LOG2;
            verdict(
                ok,
                format!(
                    "k={k} a=1e{e}: sizes {:?} (want {:?}), outer root rel. error vs {OUTER_ROOT} = {:.3e}, middle ratio {:?}, residual 2^{}",
                    r.sizes, r.expected_sizes, r.outer_rel_err, r.middle_ratio, r.residual_log2
                ),
            )
        }
    }
}

fn c6(supp: &mut Vec<(String, Verdict)>) -> Verdict {
    let stated: Vec<Verdict> = [1, 2].iter().map(|&k| roots_case(k, ROOT_ALPHA_EXP)).collect();
    for (k, e) in [(1, -12), (2, -16)] {
        supp.push(("6    roots".to_string(), roots_case(k, e)));
    }
    verdict(
        stated.iter().all(|v| v.pass),
        stated.iter().map(|v| v.detail.as_str()).collect::<Vec<_>>().join("; "),
    )
}

fn c7() -> Verdict {
    let mut bad = Vec::new();
    let mut variant = Vec::new();
    for k in 1..=5 {
        let r = pencil::delta_branch_identity(k).unwrap();
        if !r.holds {
            bad.push(k);
        }
        variant.push(r.variant_holds);
    }
    verdict(
        bad.is_empty(),
        format!("a^3 h = d1 d2 for k<=5, failures {bad:?}; printed t-exponent variant holds: {variant:?}"),
    )
}

fn c8() -> Verdict {
    let vars: Vec<String> = chart_vars().iter().map(|s| s.to_string()).collect();
    let mut bad = Vec::new();
    for k in 1..=5 {
        let r = substitution_check(k).unwrap();
        let factor = r.factor.as_ref().map(|m| m.render(&vars));
        if !(r.equal && r.substituted.num_terms() == 6 && factor.as_deref() == Some("x*z")) {
            bad.push(format!("k={k}: equal {} factor {factor:?}", r.equal));
        }
    }
    verdict(
        bad.is_empty(),
        format!("k<=5, 6-term identity with factor x*z, failures {bad:?}"),
    )
}

fn c9() -> Verdict {
    let mut bad = Vec::new();
    for k in [1, 2] {
        let newy = coordchange_check_with(k, SEED, NewyVariant::Stated).unwrap();
        let newy_c = coordchange_check_with(k, SEED, NewyVariant::FlippedSign).unwrap();
        let conic = conic_bundle_check_with(k, SEED, ConicImage::Stated).unwrap();
        let conic_c = conic_bundle_check_with(k, SEED, ConicImage::MissingDelta1).unwrap();
        if !(newy.holds && newy.samples_used == IDENTITY_SAMPLES) {
            bad.push(format!("k={k} newy ({} samples)", newy.samples_used));
        }
        if !(conic.holds && conic.samples_used == IDENTITY_SAMPLES) {
            bad.push(format!("k={k} conic ({} samples)", conic.samples_used));
        }
        if newy_c.holds {
            bad.push(format!("k={k} newy control passed"));
        }
        if conic_c.holds {
            bad.push(format!("k={k} conic control passed"));
        }
    }
    verdict(bad.is_empty(), format!("k in {{1,2}}, seed {SEED}, failures {bad:?}"))
}

fn weil_bound(k: i64, s: i64, q: u64) -> bool {
    (s.unsigned_abs() as f64) <= (6 * k + 2) as f64 * (q as f64).sqrt() + 2.0
}

fn is_odd_prime(n: u64) -> bool {
    n > 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn c10() -> Verdict {
    let mut bad = Vec::new();
    for k in [1, 2] {
        for q in [3u64, 5, 7] {
            let alphas: Vec<ExactScalar> = (1..20)
                .map(ExactScalar::from)
                .filter(|a| pencil::charsum_y(k, a, q, Exec::Sequential).is_ok())
                .take(2)
                .collect();
            if alphas.is_empty() {
                bad.push(format!("k={k} q={q}: no admissible alpha"));
            }
            for a in &alphas {
                let ch = count_w(k, a, q, CountMethod::Char, Exec::default());
                let br = count_w(k, a, q, CountMethod::Brute, Exec::default());
                if ch.is_err() || ch != br {
                    bad.push(format!("k={k} q={q} a={a}: W {ch:?} vs {br:?}"));
                }
                let y = pencil::charsum_y(k, a, q, Exec::default()).unwrap();
                let yb = pencil::charsum_y_brute(k, a, q).unwrap();
                if y.affine_count != yb {
                    bad.push(format!("k={k} q={q} a={a}: Y {} vs {yb}", y.affine_count));
                }
            }
        }
    }
    let mut rng = seeded_rng(SEED);
    let mut weil = 0;
    for q in (7..=101).filter(|&q| is_odd_prime(q)) {
        let mut found = 0;
        for _ in 0..1000 {
            if found == 5 {
                break;
            }
            let a = random_rational(&mut rng);
            if let Ok(c) = pencil::charsum_y(1, &a, q, Exec::default()) {
                found += 1;
                weil += 1;
                if !weil_bound(1, c.s, q) {
                    bad.push(format!("Weil q={q} a={a}: S={}", c.s));
                }
            }
        }
        if found < 5 {
            bad.push(format!("q={q}: only {found} admissible alphas"));
        }
    }
    verdict(
        bad.is_empty(),
        format!("W char=brute and Y brute=char for q in {{3,5,7}}, k in {{1,2}}; {weil} Weil checks; failures {bad:?}"),
    )
}

fn c11() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let third = ExactScalar::new(2, 3);
    for k in 1..=3 {
        let run = mmp_thresholds(k).unwrap();
        if run.thresholds != expected_thresholds(k) {
            bad.push(format!("k={k} thresholds {:?}", run.thresholds));
        }
        let p = jk_polytope(k).unwrap();
        let fan = normal_fan(&p);
        if p.vertices != expected_jk_vertices(k) || fan.rays.len() != 8 || fan.maximal_cones.len() != 6 {
            bad.push(format!("k={k} polytope"));
        }
        let want = (
            vec![third.clone(), third.clone(), third.clone(), ExactScalar::one()],
            vec![
                third.clone(),
                ExactScalar::new(2 * k + 1, 3),
                ExactScalar::new(2 * k + 1, 3),
                ExactScalar::new(4 * k + 1, 3),
            ],
        );
        if run.final_segment() != Some(want) || !run.empty_beyond {
            bad.push(format!("k={k} segment P(2/3)"));
        }
    }
    for k in [1, 2] {
        let f = final_fan_check(k).unwrap();
        if !(f.ok && f.rays.len() == 7 && f.engine_cones.len() == 9) {
            bad.push(format!(
                "k={k} final fan: missing {:?} unexpected {:?}",
                f.missing, f.unexpected
            ));
        }
        let r = toric::quotient_relations_check(k).unwrap();
        if !(r.relation_holds && r.half_sum_in_n0 && !r.half_sum_in_n00) {
            bad.push(format!("k={k} relations {:?}", r.failures));
        }
    }
    let t = start.elapsed();
    verdict(
        bad.is_empty() && t < TORIC_RUNTIME,
        format!("failures {bad:?}, runtime {t:.1?}"),
    )
}

fn c12() -> Verdict {
    let one = ExactScalar::one();
    let tol = Real::pow2(FIBER_RESIDUAL_LOG2, PREC);
    let mut rng = seeded_rng(SEED);
    let mut bad = Vec::new();
    let mut done = 0;
    while done < FIBER_SAMPLES {
        let t = random_rational(&mut rng);
        let tc = BigComplex::from_scalar(&t, PREC);
        let g = match fiber_special_points(1, &one, FiberSelector::Regular(tc.clone()), PREC) {
            Err(ThreefoldError::CriticalFibre(_)) => continue,
            other => other.unwrap(),
        };
        let names: Vec<&str> = g.points.iter().map(|p| p.name.as_str()).collect();
        if names != ["p_t+", "p_t-", "q_t+", "q_t-"] || g.points.iter().any(|p| p.residual >= tol) {
            bad.push(format!("t={t} points"));
        }
        let l = lines_on_fiber(1, &one, &tc, PREC).unwrap();
        if l.lines.len() != 4 || l.lines.iter().any(|c| c.max_residual >= tol) {
            bad.push(format!("t={t} lines"));
        }
        done += 1;
    }
    let g = fiber_special_points(1, &one, FiberSelector::Delta1Root, PREC).unwrap();
    let p = g.points.iter().find(|p| p.name == "p_t");
    let grad = p.and_then(|p| p.gradient_norm.clone());
    if !grad.as_ref().is_some_and(|x| *x < tol) || p.is_none_or(|p| p.residual >= tol) {
        bad.push(format!("delta1 root gradient {grad:?}"));
    }
    verdict(
        bad.is_empty(),
        format!(
            "{FIBER_SAMPLES} regular fibres (k=1, a=1), residuals < 2^{FIBER_RESIDUAL_LOG2}; delta1-root gradient {}; failures {bad:?}",
            grad.map(|x| x.to_sci(4)).unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let mut supp = Vec::new();
    let mut failed = 0;
    type Criterion<'a> = (
        &'a str,
        &'a str,
        Box<dyn FnOnce(&mut Vec<(String, Verdict)>) -> Verdict>,
    );
    let criteria: Vec<Criterion> = vec![
        ("1", "coefficient identity", Box::new(|_| c1())),
        ("2", "period against series", Box::new(c2)),
        ("3", "operator order", Box::new(|_| c3())),
        ("4", "operator annihilates coefficients", Box::new(|_| c4())),
        ("5", "singular value coherence", Box::new(|_| c5())),
        ("6", "root structure", Box::new(c6)),
        ("7", "branch polynomial factorization", Box::new(|_| c7())),
        ("8", "torus to chart substitution", Box::new(|_| c8())),
        ("9", "coordinate change and conic bundle", Box::new(|_| c9())),
        ("10", "point counts", Box::new(|_| c10())),
        ("11", "toric thresholds and final fan", Box::new(|_| c11())),
        ("12", "fibre geometry", Box::new(|_| c12())),
    ];
    for (tag, title, f) in criteria {
        let start = Instant::now();
        let v = f(&mut supp);
        report(tag, title, start, &v);
        if !v.pass {
            failed += 1;
        }
        for (label, s) in supp.drain(..) {
            let word = if s.pass { "PASS" } else { "FAIL" };
            println!("SUPP {word} {label}: {}", s.detail);
        }
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
