//! One function per check, each returning `(passed, data)`, and the
//! subcommands that drive them.

use exactcore::identity::{random_rational, seeded_rng};
use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar, Real};
use hypergeom::{
    bcm_data, build_operator, coefficient_identity_sides, ifun_coefficient, jk_hypersurface,
    jk_singular_value_closed_form, m_alpha_product, multiset_identity_check_with, recurrence_check, singular_value,
    IfunCoefficients, WeightedHypersurface,
};
use periods::{main_theorem_check, Branch, QuadratureOptions};
use serde_json::{json, Value};
use threefold::{
    chart_vars, conic_bundle_check_with, coordchange_check_with, count_w, fiber_special_points, lines_on_fiber,
    substitution_check, ConicImage, CountMethod, FiberGeometry, FiberSelector, NewyVariant, SpecialPoint,
    ThreefoldError, BRUTE_FORCE_MAX_Q,
};
use toric::{
    expected_jk_vertices, expected_thresholds, final_fan_check, jk_polytope, mmp_thresholds, mmp_thresholds_in,
    normal_fan, quotient_relations_check, FacetFamily, Point,
};

use crate::{params, usage, Ctx, Emitter, Method, Target, UsageError};

pub type Outcome = Result<(bool, Value), String>;

/// Digits kept when printing high-precision values.
const DIGITS: usize = 24;
/// Digits kept when printing residuals and error estimates.
const SHORT: usize = 6;

/// Number of random regular fibres sampled by the fibre checks.
pub const FIBER_SAMPLES: usize = 10;
/// Redraws allowed per sample before a critical fibre becomes an error.
const MAX_REDRAWS: usize = 64;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sci(r: &Real) -> String {
    r.to_sci(SHORT)
}

fn cplx(z: &BigComplex) -> Value {
    json!({ "re": z.re.to_sci(DIGITS), "im": z.im.to_sci(DIGITS) })
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn point(p: &Point) -> Vec<String> {
    strs(p)
}

/// `10^e` exactly.
pub fn pow10(e: i64) -> ExactScalar {
    ExactScalar::from(10).pow(e).expect("10 is nonzero")
}

fn real(x: &ExactScalar, prec: usize) -> Real {
    Real::from_scalar(x, prec)
}

/// `r·e^{iπ/n}` at the given precision.
pub fn rotated(r: &ExactScalar, n: i64, prec: usize) -> BigComplex {
    let theta = &Real::pi(prec) / &Real::from_i64(n, prec);
    BigComplex::from_polar(&real(r, prec), &theta)
}

// ---------------------------------------------------------------- hypergeom

pub fn ifun(k: i64, jmax: u64) -> Outcome {
    let h = jk_hypersurface(k).map_err(err)?;
    let coeffs: Vec<ExactScalar> = IfunCoefficients::new(&h).take(jmax as usize + 1).collect();
    let direct: Vec<ExactScalar> = (0..=jmax).map(|j| ifun_coefficient(&h, j)).collect();
    let ok = coeffs == direct && coeffs.first().is_some_and(ExactScalar::is_one);
    Ok((
        ok,
        json!({
            "weights": h.weights(),
            "degree": h.degree(),
            "coefficients": strs(&coeffs),
            "ratio_matches_factorials": coeffs == direct,
        }),
    ))
}

pub fn identity_one(k: i64, j: u64) -> Outcome {
    let (lhs, rhs) = coefficient_identity_sides(k, j).map_err(err)?;
    Ok((
        lhs == rhs,
        json!({ "j": j, "lhs": lhs.to_string(), "rhs": rhs.to_string() }),
    ))
}

/// Every `j ≤ jmax` in one line.
pub fn identity_range(k: i64, jmax: u64) -> Outcome {
    let mut failures = Vec::new();
    for j in 0..=jmax {
        let (lhs, rhs) = coefficient_identity_sides(k, j).map_err(err)?;
        if lhs != rhs {
            failures.push(j);
        }
    }
    Ok((
        failures.is_empty(),
        json!({ "jmax": jmax, "checked": jmax + 1, "failures": failures }),
    ))
}

pub fn ode_order(h: &WeightedHypersurface, expected: usize) -> Outcome {
    let order = build_operator(h).order;
    Ok((
        order == expected,
        json!({ "weights": h.weights(), "degree": h.degree(), "order": order, "expected": expected }),
    ))
}

pub fn ode_recurrence(h: &WeightedHypersurface, jmax: u64) -> Outcome {
    let r = recurrence_check(h, jmax).map_err(err)?;
    Ok((
        r.holds,
        json!({
            "weights": h.weights(),
            "degree": h.degree(),
            "jmax": jmax,
            "checked": r.checked,
            "first_failure": r.first_failure,
        }),
    ))
}

/// The two non-JK weight systems used for the operator checks.
pub fn non_jk_systems() -> Vec<WeightedHypersurface> {
    [(vec![1, 1, 1, 1, 1], 5), (vec![1, 1, 1, 2], 4)]
        .into_iter()
        .map(|(w, d)| WeightedHypersurface::new(w, d).expect("valid weights"))
        .collect()
}

pub fn bcm_multiset(k: i64) -> Outcome {
    let d = bcm_data(k).map_err(err)?;
    let ok = multiset_identity_check_with(&d.p, &d.q, &d.v, &d.w);
    Ok((
        ok,
        json!({ "v": strs(&d.v), "w": strs(&d.w), "p": d.p, "q": d.q, "m": d.m.to_string() }),
    ))
}

pub fn bcm_m_alpha(k: i64) -> Outcome {
    let prod = m_alpha_product(k).map_err(err)?;
    Ok((prod.is_one(), json!({ "m_times_alpha0": prod.to_string() })))
}

pub fn bcm_singular(k: i64) -> Outcome {
    let h = jk_hypersurface(k).map_err(err)?;
    let value = singular_value(&h);
    let closed = jk_singular_value_closed_form(k).map_err(err)?;
    Ok((
        value == closed,
        json!({ "singular_value": value.to_string(), "closed_form": closed.to_string() }),
    ))
}

// ------------------------------------------------------------------ periods

/// Quadrature against series. Passes iff the relative agreement is below
/// `tol` and the quadrature error estimate is below `tol/100`.
pub fn period(k: i64, alpha: &BigComplex, prec: usize, tol: &ExactScalar, branch: Branch) -> Outcome {
    let quad_tol = tol / &ExactScalar::from(100);
    let mut opts = QuadratureOptions::new(prec, real(&quad_tol, prec));
    opts.branch = branch;
    let r = main_theorem_check(k, alpha, &opts).map_err(err)?;
    let ok = r.agreement < real(tol, prec) && r.quadrature.error_estimate < real(&quad_tol, prec);
    let c = &r.quadrature.contour;
    Ok((
        ok,
        json!({
            "period": cplx(&r.quadrature.value),
            "series": cplx(&r.series_value),
            "agreement": sci(&r.agreement),
            "error_estimate": sci(&r.quadrature.error_estimate),
            "series_terms": r.series_terms_used,
            "contour": {
                "radius": c.radius.to_sci(SHORT),
                "exponent": c.exponent.to_string(),
                "samples": c.sample_count,
                "precision_bits": c.precision_bits,
            },
            "disk_margin": sci(&r.quadrature.disk_margin),
            "branch": format!("{branch:?}").to_lowercase(),
        }),
    ))
}

/// The flipped-branch control: passes iff the check it wraps fails.
pub fn period_control(k: i64, alpha: &BigComplex, prec: usize, tol: &ExactScalar) -> Outcome {
    let (ok, data) = period(k, alpha, prec, tol, Branch::Flipped)?;
    Ok((!ok, data))
}

// ------------------------------------------------------------------- pencil

pub fn roots(k: i64, alpha: &BigComplex, prec: usize) -> Outcome {
    let r = pencil::root_structure_check(k, alpha, prec).map_err(err)?;
    Ok((
        r.pass,
        json!({
            "sizes": r.sizes,
            "expected_sizes": r.expected_sizes,
            "outer_rel_err": format!("{:.6e}", r.outer_rel_err),
            "middle_ratio": r.middle_ratio.map(|(lo, hi)| [format!("{lo:.6}"), format!("{hi:.6}")]),
            "residual_log2": r.residual_log2,
            "sizes_ok": r.sizes_ok,
            "outer_ok": r.outer_ok,
            "middle_ok": r.middle_ok,
            "residual_ok": r.residual_ok,
        }),
    ))
}

pub fn delta(k: i64) -> Outcome {
    let r = pencil::delta_branch_identity(k).map_err(err)?;
    Ok((
        r.holds,
        json!({
            "cleared_terms": r.cleared.num_terms(),
            "difference_terms": r.difference.num_terms(),
            "printed_variant_holds": r.variant_holds,
            "printed_variant_difference_terms": r.variant_difference.num_terms(),
        }),
    ))
}

// ---------------------------------------------------------------- threefold

pub fn subst(k: i64) -> Outcome {
    let r = substitution_check(k).map_err(err)?;
    let vars: Vec<String> = chart_vars().iter().map(|s| s.to_string()).collect();
    Ok((
        r.equal,
        json!({
            "factor": r.factor.as_ref().map(|m| m.render(&vars)),
            "terms": r.substituted.num_terms(),
            "difference_terms": r.difference.num_terms(),
        }),
    ))
}

pub fn coordchange(k: i64, seed: u64, variant: NewyVariant) -> Outcome {
    let r = coordchange_check_with(k, seed, variant).map_err(err)?;
    Ok((
        r.holds,
        json!({
            "variant": format!("{variant:?}"),
            "holds": r.holds,
            "pullback_holds": r.pullback_holds,
            "samples": r.samples_used,
            "excluded": r.excluded,
        }),
    ))
}

pub fn conic(k: i64, seed: u64, image: ConicImage) -> Outcome {
    let r = conic_bundle_check_with(k, seed, image).map_err(err)?;
    Ok((
        r.holds,
        json!({
            "image": format!("{image:?}"),
            "holds": r.holds,
            "factor_exponents": r.factor_exponents,
            "samples": r.samples_used,
            "excluded": r.excluded,
        }),
    ))
}

/// A negative control passes iff the wrapped check fails.
pub fn control(o: Outcome) -> Outcome {
    o.map(|(ok, d)| (!ok, d))
}

fn special_point(p: &SpecialPoint) -> Value {
    json!({
        "name": p.name,
        "residual": sci(&p.residual),
        "gradient_norm": p.gradient_norm.as_ref().map(sci),
        "passes": p.passes,
    })
}

fn fiber_value(g: &FiberGeometry) -> Value {
    json!({
        "t": cplx(&g.t),
        "tolerance": sci(&g.tolerance),
        "points": g.points.iter().map(special_point).collect::<Vec<_>>(),
        "printed": g.printed.iter().map(special_point).collect::<Vec<_>>(),
    })
}

/// `n` seeded rational fibre parameters, each redrawn while `probe` reports a
/// critical fibre.
pub fn regular_parameters<T>(
    seed: u64,
    n: usize,
    mut probe: impl FnMut(&ExactScalar) -> Result<T, ThreefoldError>,
) -> Vec<(ExactScalar, Result<T, String>)> {
    let mut rng = seeded_rng(seed);
    (0..n)
        .map(|_| {
            let mut last = None;
            for _ in 0..MAX_REDRAWS {
                let t = random_rational(&mut rng);
                match probe(&t) {
                    Err(ThreefoldError::CriticalFibre(_)) => last = Some(t),
                    other => return (t, other.map_err(err)),
                }
            }
            let t = last.expect("at least one draw");
            (t, Err("every draw was a critical fibre".to_string()))
        })
        .collect()
}

fn with_t(t: &ExactScalar, (ok, mut d): (bool, Value)) -> (bool, Value) {
    d["t_exact"] = json!(t.to_string());
    (ok, d)
}

pub fn fiber_regular(k: i64, a: &ExactScalar, seed: u64, n: usize, prec: usize) -> Vec<Outcome> {
    regular_parameters(seed, n, |t| {
        fiber_special_points(k, a, FiberSelector::Regular(BigComplex::from_scalar(t, prec)), prec)
    })
    .into_iter()
    .map(|(t, r)| r.map(|g| with_t(&t, (g.ok, fiber_value(&g)))))
    .collect()
}

pub fn fiber_at(k: i64, a: &ExactScalar, which: FiberSelector, prec: usize) -> Outcome {
    let g = fiber_special_points(k, a, which, prec).map_err(err)?;
    Ok((g.ok, fiber_value(&g)))
}

pub fn lines_regular(k: i64, a: &ExactScalar, seed: u64, n: usize, prec: usize) -> Vec<Outcome> {
    regular_parameters(seed, n, |t| {
        lines_on_fiber(k, a, &BigComplex::from_scalar(t, prec), prec)
    })
    .into_iter()
    .map(|(t, r)| {
        r.map(|l| {
            let lines: Vec<Value> = l
                .lines
                .iter()
                .map(|c| json!({ "name": c.name, "max_residual": sci(&c.max_residual), "passes": c.passes }))
                .collect();
            with_t(
                &t,
                (
                    l.ok,
                    json!({
                        "t": cplx(&l.t),
                        "nu_gap": sci(&l.nu_gap),
                        "collision": l.collision,
                        "tolerance": sci(&l.tolerance),
                        "lines": lines,
                        "printed_c2_residual": sci(&l.printed_c2_residual),
                    }),
                ),
            )
        })
    })
    .collect()
}

/// `count_W` by the chosen method, cross-checked against the other one when
/// brute force is within reach.
pub fn count_w_check(k: i64, alpha: &ExactScalar, q: u64, method: Method, exec: Exec) -> Outcome {
    let m = |m: Method| match m {
        Method::Char => CountMethod::Char,
        Method::Brute => CountMethod::Brute,
    };
    let primary = count_w(k, alpha, q, m(method), exec).map_err(err)?;
    if q > BRUTE_FORCE_MAX_Q {
        return Ok((
            true,
            json!({ "count": primary, "method": format!("{method:?}").to_lowercase() }),
        ));
    }
    let other = match method {
        Method::Char => Method::Brute,
        Method::Brute => Method::Char,
    };
    let secondary = count_w(k, alpha, q, m(other), exec).map_err(err)?;
    let (char_count, brute_count) = match method {
        Method::Char => (primary, secondary),
        Method::Brute => (secondary, primary),
    };
    Ok((
        char_count == brute_count,
        json!({ "count": primary, "char": char_count, "brute": brute_count }),
    ))
}

/// Character sum over `Y_{k,α}`: Weil bound, and the brute count of affine
/// points when `q` is small.
pub fn count_y_check(k: i64, alpha: &ExactScalar, q: u64, exec: Exec) -> Outcome {
    let c = pencil::charsum_y(k, alpha, q, exec).map_err(err)?;
    let mut data = json!({ "s": c.s, "affine_count": c.affine_count, "weil_ok": c.weil_ok });
    let mut ok = c.weil_ok;
    if q <= BRUTE_FORCE_MAX_Q {
        let brute = pencil::charsum_y_brute(k, alpha, q).map_err(err)?;
        data["brute_affine_count"] = json!(brute);
        ok &= brute == c.affine_count;
    }
    Ok((ok, data))
}

/// `n` seeded values of α with good reduction mod `q`.
pub fn admissible_alphas(k: i64, q: u64, seed: u64, n: usize) -> Result<Vec<ExactScalar>, String> {
    let mut rng = seeded_rng(seed ^ q);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n * MAX_REDRAWS {
        if out.len() == n {
            break;
        }
        let a = random_rational(&mut rng);
        if pencil::charsum_y(k, &a, q, Exec::Sequential).is_ok() && !out.contains(&a) {
            out.push(a);
        }
    }
    if out.len() < n {
        return Err(format!("found only {} admissible alphas mod {q}", out.len()));
    }
    Ok(out)
}

pub fn weil_batch(k: i64, q: u64, seed: u64, n: usize, exec: Exec) -> Outcome {
    let alphas = admissible_alphas(k, q, seed, n)?;
    let bound = (6 * k as u64 + 2) as f64 * (q as f64).sqrt() + 2.0;
    let mut sums = Vec::new();
    let mut ok = true;
    for a in &alphas {
        let c = pencil::charsum_y(k, a, q, exec).map_err(err)?;
        ok &= c.weil_ok;
        sums.push(c.s);
    }
    Ok((
        ok,
        json!({ "alphas": strs(&alphas), "sums": sums, "bound": format!("{bound:.6}") }),
    ))
}

// -------------------------------------------------------------------- toric

pub fn toric_polytope(k: i64) -> Outcome {
    let p = jk_polytope(k).map_err(err)?;
    let fan = normal_fan(&p);
    let vertices_ok = p.vertices == expected_jk_vertices(k);
    let ok = vertices_ok && fan.maximal_cones.len() == 6 && fan.rays.len() == 8;
    Ok((
        ok,
        json!({
            "vertices": p.vertices.iter().map(point).collect::<Vec<_>>(),
            "facets": p.genuine_facets().len(),
            "rays": fan.rays.len(),
            "maximal_cones": fan.maximal_cones.len(),
            "vertices_match": vertices_ok,
        }),
    ))
}

pub fn toric_thresholds(k: i64) -> Outcome {
    let run = mmp_thresholds(k).map_err(err)?;
    let nine = mmp_thresholds_in(k, FacetFamily::NineFacet, Exec::default()).map_err(err)?;
    let intervals: Vec<Value> = run
        .fans
        .iter()
        .map(|f| {
            json!({
                "lower": f.lower.to_string(),
                "upper": f.upper.to_string(),
                "vertices": f.vertex_count,
                "facets": f.facet_count,
                "rays": f.fan.rays.len(),
                "maximal_cones": f.fan.maximal_cones.len(),
                "removed_cones": f.removed_cones,
                "added_cones": f.added_cones,
            })
        })
        .collect();
    let segment = run.final_segment();
    let third = ExactScalar::new(2, 3);
    let segment_ok = segment.as_ref().is_some_and(|(a, b)| {
        *a == vec![third.clone(), third.clone(), third.clone(), ExactScalar::one()]
            && *b
                == vec![
                    third.clone(),
                    ExactScalar::new(2 * k + 1, 3),
                    ExactScalar::new(2 * k + 1, 3),
                    ExactScalar::new(4 * k + 1, 3),
                ]
    });
    let thresholds_ok = run.thresholds == expected_thresholds(k);
    Ok((
        thresholds_ok && segment_ok && run.empty_beyond,
        json!({
            "thresholds": strs(&run.thresholds),
            "expected": strs(&expected_thresholds(k)),
            "intervals": intervals,
            "final_segment": segment.map(|(a, b)| vec![point(&a), point(&b)]),
            "empty_beyond": run.empty_beyond,
            "nine_facet_thresholds": strs(&nine.thresholds),
        }),
    ))
}

pub fn final_fan(k: i64) -> Outcome {
    let r = final_fan_check(k).map_err(err)?;
    Ok((
        r.ok,
        json!({
            "interval": r.interval.map(|(a, b)| [a.to_string(), b.to_string()]),
            "vertices": r.vertex_count,
            "facets": r.facet_count,
            "rays": r.rays.iter().map(|x| json!({ "label": x.label, "vector": x.vector })).collect::<Vec<_>>(),
            "rho10": r.rho10.map(|x| x.vector),
            "maximal_cones": r.engine_cones,
            "missing": r.missing,
            "unexpected": r.unexpected,
        }),
    ))
}

pub fn relations(k: i64) -> Outcome {
    let r = quotient_relations_check(k).map_err(err)?;
    Ok((
        r.ok,
        json!({
            "c0_functional": r.c0_functional,
            "c0_rays": r.c0_rays,
            "relation": r.relation,
            "relation_holds": r.relation_holds,
            "half_sum": point(&r.half_sum),
            "half_sum_in_n0": r.half_sum_in_n0,
            "half_sum_in_n00": r.half_sum_in_n00,
            "index_n00": r.index_n00.map(|x| x.to_string()),
            "dual_basis_matches": r.dual_basis_matches,
            "monomials": r.monomials,
            "monomials_match": r.monomials_match,
            "failures": r.failures,
        }),
    ))
}

// -------------------------------------------------------------- subcommands

fn alpha_complex(ctx: &Ctx) -> Result<(String, BigComplex), UsageError> {
    let (re, im) = ctx.alpha()?;
    let s = ctx.flags.alpha.clone().unwrap_or_default();
    Ok((s, BigComplex::from_scalars(&re, &im, ctx.prec)))
}

pub fn ifun_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, jmax) = (ctx.k(), ctx.flags.jmax.unwrap_or(10));
    em.check("ifun", params! {"k" => k, "jmax" => jmax}, || ifun(k, jmax));
    Ok(())
}

pub fn identity_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, jmax) = (ctx.k(), ctx.flags.jmax.unwrap_or(40));
    for j in 0..=jmax {
        em.check("identity", params! {"k" => k, "j" => j}, || identity_one(k, j));
    }
    Ok(())
}

pub fn ode_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, jmax) = (ctx.k(), ctx.flags.jmax.unwrap_or(60));
    let h = jk_hypersurface(k).map_err(|e| usage(e.to_string()))?;
    em.check("ode", params! {"k" => k, "check" => "order"}, || {
        ode_order(&h, 6 * k as usize + 2)
    });
    em.check(
        "ode",
        params! {"k" => k, "check" => "recurrence", "jmax" => jmax},
        || ode_recurrence(&h, jmax),
    );
    Ok(())
}

pub fn bcm_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    em.check("bcm", params! {"k" => k, "check" => "multiset"}, || bcm_multiset(k));
    em.check("bcm", params! {"k" => k, "check" => "m_alpha"}, || bcm_m_alpha(k));
    em.check("bcm", params! {"k" => k, "check" => "singular_value"}, || {
        bcm_singular(k)
    });
    Ok(())
}

pub fn period_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    let (s, alpha) = alpha_complex(ctx)?;
    let p = params! {"k" => k, "alpha" => s, "prec" => ctx.prec, "tol" => ctx.flags.tol};
    em.check("period", p, || period(k, &alpha, ctx.prec, &ctx.tol, Branch::Principal));
    Ok(())
}

pub fn roots_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    let (s, alpha) = alpha_complex(ctx)?;
    em.check("roots", params! {"k" => k, "alpha" => s, "prec" => ctx.prec}, || {
        roots(k, &alpha, ctx.prec)
    });
    Ok(())
}

pub fn delta_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    em.check("delta-check", params! {"k" => k}, || delta(k));
    Ok(())
}

pub fn subst_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    em.check("subst-check", params! {"k" => k}, || subst(k));
    Ok(())
}

pub fn fiber_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, a, seed, prec) = (ctx.k(), ctx.a()?, ctx.flags.seed, ctx.prec);
    let a_s = a.to_string();
    for (i, o) in fiber_regular(k, &a, seed, FIBER_SAMPLES, prec).into_iter().enumerate() {
        em.check(
            "fiber-check",
            params! {"k" => k, "a" => a_s, "seed" => seed, "fibre" => "regular", "sample" => i},
            || o,
        );
    }
    em.check(
        "fiber-check",
        params! {"k" => k, "a" => a_s, "fibre" => "delta1-root"},
        || fiber_at(k, &a, FiberSelector::Delta1Root, prec),
    );
    em.check(
        "fiber-check",
        params! {"k" => k, "a" => a_s, "fibre" => "delta2-root"},
        || fiber_at(k, &a, FiberSelector::Delta2Root, prec),
    );
    Ok(())
}

pub fn lines_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, a, seed, prec) = (ctx.k(), ctx.a()?, ctx.flags.seed, ctx.prec);
    let a_s = a.to_string();
    for (i, o) in lines_regular(k, &a, seed, FIBER_SAMPLES, prec).into_iter().enumerate() {
        em.check(
            "lines-check",
            params! {"k" => k, "a" => a_s, "seed" => seed, "sample" => i},
            || o,
        );
    }
    Ok(())
}

pub fn conic_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, seed) = (ctx.k(), ctx.flags.seed);
    em.check(
        "conic-check",
        params! {"k" => k, "seed" => seed, "check" => "newy"},
        || coordchange(k, seed, NewyVariant::Stated),
    );
    em.check(
        "conic-check",
        params! {"k" => k, "seed" => seed, "check" => "newy-control"},
        || control(coordchange(k, seed, NewyVariant::FlippedSign)),
    );
    em.check(
        "conic-check",
        params! {"k" => k, "seed" => seed, "check" => "conic"},
        || conic(k, seed, ConicImage::Stated),
    );
    em.check(
        "conic-check",
        params! {"k" => k, "seed" => seed, "check" => "conic-control"},
        || control(conic(k, seed, ConicImage::MissingDelta1)),
    );
    Ok(())
}

pub fn count_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let (k, q) = (ctx.k(), ctx.q()?);
    let alpha = ctx.alpha_rational_or_one()?;
    let a_s = alpha.to_string();
    match ctx.flags.target {
        Target::W => {
            let method = ctx.flags.method;
            let m = format!("{method:?}").to_lowercase();
            em.check(
                "count",
                params! {"k" => k, "q" => q, "alpha" => a_s, "target" => "W", "method" => m},
                || count_w_check(k, &alpha, q, method, Exec::default()),
            );
        }
        Target::Y => {
            em.check(
                "count",
                params! {"k" => k, "q" => q, "alpha" => a_s, "target" => "Y"},
                || count_y_check(k, &alpha, q, Exec::default()),
            );
        }
    }
    Ok(())
}

pub fn mmp_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    em.check("mmp", params! {"k" => k, "check" => "polytope"}, || toric_polytope(k));
    em.check("mmp", params! {"k" => k, "check" => "thresholds"}, || {
        toric_thresholds(k)
    });
    Ok(())
}

pub fn relations_cmd(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let k = ctx.k();
    em.check("relations-check", params! {"k" => k, "check" => "final-fan"}, || {
        final_fan(k)
    });
    em.check("relations-check", params! {"k" => k, "check" => "relations"}, || {
        relations(k)
    });
    Ok(())
}
