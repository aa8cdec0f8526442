//! `all`: every acceptance check for `k ≤ kmax` in a fixed order, followed by
//! a pass/fail matrix.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use exactcore::par::Exec;
use exactcore::{BigComplex, ExactScalar};
use hypergeom::jk_hypersurface;
use periods::Branch;
use serde_json::{json, Value};
use threefold::{ConicImage, FiberSelector, NewyVariant};

use crate::checks::{self, pow10, rotated, Outcome};
use crate::{params, Ctx, Emitter, Method, Report, Status, UsageError};

/// Rows of the summary matrix, in emission order.
pub const ROWS: [&str; 14] = [
    "01-coefficient-identity",
    "02-period",
    "02-period-supplementary",
    "03-operator-order",
    "04-recurrence",
    "05-singular-value",
    "06-roots",
    "06-roots-supplementary",
    "07-delta",
    "08-substitution",
    "09-newy-conic",
    "10-point-counts",
    "11-toric",
    "12-fiber",
];

pub const IDENTITY_JMAX: u64 = 40;
pub const RECURRENCE_JMAX: u64 = 60;
pub const COUNT_PRIMES: [u64; 3] = [3, 5, 7];
pub const WEIL_SAMPLES: usize = 5;

/// Odd primes in `[7, 101]`.
pub fn weil_primes() -> Vec<u64> {
    (7..=101u64)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

/// Stated and supplementary parameters for the period and root checks.
pub fn stated_period_alphas(k: i64, prec: usize) -> Vec<(String, BigComplex)> {
    let a = pow10(-3);
    let mut v = vec![("1e-3".to_string(), BigComplex::from_scalar(&a, prec))];
    if k == 1 {
        v.push(("1e-3*exp(i*pi/5)".to_string(), rotated(&a, 5, prec)));
    }
    v
}

pub fn supplementary_period_alphas(k: i64, prec: usize) -> Vec<(String, BigComplex)> {
    match k {
        1 => {
            let a = pow10(-9);
            vec![
                ("1e-9".to_string(), BigComplex::from_scalar(&a, prec)),
                ("1e-9*exp(i*pi/5)".to_string(), rotated(&a, 5, prec)),
            ]
        }
        2 => vec![("1e-15".to_string(), BigComplex::from_scalar(&pow10(-15), prec))],
        _ => Vec::new(),
    }
}

pub const STATED_ROOT_ALPHA_EXP: i64 = -6;

pub fn supplementary_root_alpha_exp(k: i64) -> Option<i64> {
    match k {
        1 => Some(-12),
        2 => Some(-16),
        _ => None,
    }
}

struct Suite<'e, 'a> {
    em: &'e mut Emitter<'a>,
    start: Instant,
    budget: Option<Duration>,
    matrix: BTreeMap<&'static str, BTreeMap<String, Status>>,
}

impl Suite<'_, '_> {
    fn over_budget(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() > b)
    }

    fn step<F>(&mut self, row: &'static str, k: i64, command: &str, mut p: BTreeMap<String, Value>, f: F)
    where
        F: FnOnce() -> Outcome,
    {
        p.insert("criterion".into(), json!(row));
        p.insert("k".into(), json!(k));
        let status = if self.over_budget() {
            self.em.emit(Report {
                command: command.to_string(),
                params: p,
                status: Status::Skipped,
                data: json!({ "reason": "budget exceeded" }),
                elapsed_ms: 0,
            });
            Status::Skipped
        } else {
            self.em.check(command, p, f)
        };
        let cell = self
            .matrix
            .entry(row)
            .or_default()
            .entry(format!("k={k}"))
            .or_insert(status);
        if *cell == Status::Skipped || (status != Status::Skipped && status > *cell) {
            *cell = status;
        }
    }
}

pub fn run_all(ctx: &Ctx, em: &mut Emitter) -> Result<(), UsageError> {
    let kmax = ctx.k();
    let (prec, tol, seed) = (ctx.prec, ctx.tol.clone(), ctx.flags.seed);
    let mut s = Suite {
        em,
        start: Instant::now(),
        budget: ctx.flags.budget_seconds.map(Duration::from_secs),
        matrix: BTreeMap::new(),
    };
    let exec = Exec::default();
    let one = ExactScalar::one();

    for k in 1..=kmax {
        if k <= 6 {
            s.step(ROWS[0], k, "identity", params! {"jmax" => IDENTITY_JMAX}, || {
                checks::identity_range(k, IDENTITY_JMAX)
            });
        }
        if k <= 2 {
            for (label, alpha) in stated_period_alphas(k, prec) {
                s.step(ROWS[1], k, "period", params! {"alpha" => label, "prec" => prec}, || {
                    checks::period(k, &alpha, prec, &tol, Branch::Principal)
                });
            }
            for (label, alpha) in supplementary_period_alphas(k, prec) {
                s.step(ROWS[2], k, "period", params! {"alpha" => label, "prec" => prec}, || {
                    checks::period(k, &alpha, prec, &tol, Branch::Principal)
                });
            }
            if let Some((label, alpha)) = supplementary_period_alphas(k, prec).pop() {
                s.step(
                    ROWS[2],
                    k,
                    "period",
                    params! {"alpha" => label, "prec" => prec, "control" => "flipped-branch"},
                    || checks::period_control(k, &alpha, prec, &tol),
                );
            }
        }
        if k <= 10 {
            let h = jk_hypersurface(k).map_err(|e| crate::usage(e.to_string()))?;
            s.step(ROWS[3], k, "ode", params! {"check" => "order"}, || {
                checks::ode_order(&h, 6 * k as usize + 2)
            });
            if k <= 3 {
                s.step(ROWS[4], k, "ode", params! {"check" => "recurrence"}, || {
                    checks::ode_recurrence(&h, RECURRENCE_JMAX)
                });
            }
            if k == 1 {
                let systems = checks::non_jk_systems();
                s.step(
                    ROWS[3],
                    k,
                    "ode",
                    params! {"check" => "order", "weights" => "1,1,1,1,1;5"},
                    || checks::ode_order(&systems[0], 4),
                );
                for h in &systems {
                    let w = format!(
                        "{};{}",
                        h.weights().iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                        h.degree()
                    );
                    s.step(
                        ROWS[4],
                        k,
                        "ode",
                        params! {"check" => "recurrence", "weights" => w},
                        || checks::ode_recurrence(h, RECURRENCE_JMAX),
                    );
                }
            }
            s.step(ROWS[5], k, "bcm", params! {"check" => "singular_value"}, || {
                checks::bcm_singular(k)
            });
            s.step(ROWS[5], k, "bcm", params! {"check" => "m_alpha"}, || {
                checks::bcm_m_alpha(k)
            });
            s.step(ROWS[5], k, "bcm", params! {"check" => "multiset"}, || {
                checks::bcm_multiset(k)
            });
        }
        if k <= 2 {
            let alpha = BigComplex::from_scalar(&pow10(STATED_ROOT_ALPHA_EXP), prec);
            s.step(ROWS[6], k, "roots", params! {"alpha" => "1e-6", "prec" => prec}, || {
                checks::roots(k, &alpha, prec)
            });
            if let Some(e) = supplementary_root_alpha_exp(k) {
                let alpha = BigComplex::from_scalar(&pow10(e), prec);
                s.step(
                    ROWS[7],
                    k,
                    "roots",
                    params! {"alpha" => format!("1e{e}"), "prec" => prec},
                    || checks::roots(k, &alpha, prec),
                );
            }
        }
        if k <= 5 {
            s.step(ROWS[8], k, "delta-check", params! {}, || checks::delta(k));
            s.step(ROWS[9], k, "subst-check", params! {}, || checks::subst(k));
        }
        if k <= 2 {
            s.step(
                ROWS[10],
                k,
                "conic-check",
                params! {"check" => "newy", "seed" => seed},
                || checks::coordchange(k, seed, NewyVariant::Stated),
            );
            s.step(
                ROWS[10],
                k,
                "conic-check",
                params! {"check" => "newy-control", "seed" => seed},
                || checks::control(checks::coordchange(k, seed, NewyVariant::FlippedSign)),
            );
            s.step(
                ROWS[10],
                k,
                "conic-check",
                params! {"check" => "conic", "seed" => seed},
                || checks::conic(k, seed, ConicImage::Stated),
            );
            s.step(
                ROWS[10],
                k,
                "conic-check",
                params! {"check" => "conic-control", "seed" => seed},
                || checks::control(checks::conic(k, seed, ConicImage::MissingDelta1)),
            );
            for q in COUNT_PRIMES {
                let alphas = checks::admissible_alphas(k, q, seed, 2);
                match alphas {
                    Ok(alphas) => {
                        for a in alphas {
                            let p = params! {"q" => q, "alpha" => a.to_string(), "target" => "W"};
                            s.step(ROWS[11], k, "count", p, || {
                                checks::count_w_check(k, &a, q, Method::Char, exec)
                            });
                            let p = params! {"q" => q, "alpha" => a.to_string(), "target" => "Y"};
                            s.step(ROWS[11], k, "count", p, || checks::count_y_check(k, &a, q, exec));
                        }
                    }
                    Err(e) => s.step(ROWS[11], k, "count", params! {"q" => q}, || Err(e)),
                }
            }
            if k == 1 {
                for q in weil_primes() {
                    s.step(
                        ROWS[11],
                        k,
                        "count",
                        params! {"q" => q, "target" => "Y", "check" => "weil"},
                        || checks::weil_batch(k, q, seed, WEIL_SAMPLES, exec),
                    );
                }
            }
        }
        if k <= 3 {
            s.step(ROWS[12], k, "mmp", params! {"check" => "polytope"}, || {
                checks::toric_polytope(k)
            });
            s.step(ROWS[12], k, "mmp", params! {"check" => "thresholds"}, || {
                checks::toric_thresholds(k)
            });
            s.step(ROWS[12], k, "relations-check", params! {"check" => "final-fan"}, || {
                checks::final_fan(k)
            });
            s.step(ROWS[12], k, "relations-check", params! {"check" => "relations"}, || {
                checks::relations(k)
            });
        }
        if k == 1 {
            let n = checks::FIBER_SAMPLES;
            let batch = |f: &dyn Fn() -> Vec<Outcome>, over: bool| {
                if over {
                    (0..n).map(|_| Err("budget exceeded".to_string())).collect()
                } else {
                    f()
                }
            };
            let fibres = batch(&|| checks::fiber_regular(k, &one, seed, n, prec), s.over_budget());
            for (i, o) in fibres.into_iter().enumerate() {
                let p = params! {"fibre" => "regular", "a" => "1", "seed" => seed, "sample" => i};
                s.step(ROWS[13], k, "fiber-check", p, || o);
            }
            let lines = batch(&|| checks::lines_regular(k, &one, seed, n, prec), s.over_budget());
            for (i, o) in lines.into_iter().enumerate() {
                let p = params! {"a" => "1", "seed" => seed, "sample" => i};
                s.step(ROWS[13], k, "lines-check", p, || o);
            }
            s.step(
                ROWS[13],
                k,
                "fiber-check",
                params! {"fibre" => "delta1-root", "a" => "1"},
                || checks::fiber_at(k, &one, FiberSelector::Delta1Root, prec),
            );
        }
    }

    let worst = s.em.worst;
    let matrix: BTreeMap<&str, BTreeMap<String, Status>> = s.matrix;
    s.em.emit(Report {
        command: "all".into(),
        params: params! {"kmax" => kmax, "budget_seconds" => ctx.flags.budget_seconds},
        status: worst,
        data: json!({ "matrix": matrix }),
        elapsed_ms: s.start.elapsed().as_millis() as u64,
    });
    Ok(())
}
