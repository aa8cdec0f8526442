//! Thresholds of the family `P(ε)`, the fans between them, the final fan and
//! the lattice relations on the hyperplane `C₀`.

use std::collections::BTreeSet;

use exactcore::par::Exec;
use exactcore::ExactScalar;

use crate::jk::{family_facets, jk_facets, shift_facets, FacetFamily};
use crate::linalg::{determinant, dot, integer_kernel_basis, solve, solve_consistent, to_scalars};
use crate::polytope::{normal_fan, Facet, Fan, LatticePolytope, Point, Ray};
use crate::{check_k, ToricError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFan {
    pub lower: ExactScalar,
    pub upper: ExactScalar,
    /// The midpoint at which the fan is computed.
    pub sample: ExactScalar,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub fan: Fan,
    /// Cones lost and gained relative to the previous interval.
    pub removed_cones: Vec<Vec<usize>>,
    pub added_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMPRun {
    pub k: i64,
    pub facets: Vec<Facet>,
    pub p_prime_vertices: usize,
    /// Strictly increasing, all in `(0,1)`.
    pub thresholds: Vec<ExactScalar>,
    /// One per open interval `(0,ε₁), (ε₁,ε₂), …`.
    pub fans: Vec<IntervalFan>,
    /// `P(ε̄)` at the last threshold.
    pub final_polytope: Option<LatticePolytope>,
    /// Whether `P(ε)` is empty just past the last threshold.
    pub empty_beyond: bool,
}

impl MMPRun {
    pub fn final_segment(&self) -> Option<(Point, Point)> {
        let p = self.final_polytope.as_ref()?;
        (p.vertices.len() == 2).then(|| (p.vertices[0].clone(), p.vertices[1].clone()))
    }

    pub fn last_fan(&self) -> Option<&IntervalFan> {
        self.fans.last()
    }
}

/// `{1/2, (4k+1)/(6k+2), 2/3}`.
pub fn expected_thresholds(k: i64) -> Vec<ExactScalar> {
    vec![
        ExactScalar::new(1, 2),
        ExactScalar::new(4 * k + 1, 6 * k + 2),
        ExactScalar::new(2, 3),
    ]
}

/// The run over the ten-ray family, whose lifted polyhedron `P′` has one
/// inequality `⟨(ρᵢ,−1),(m,r)⟩ ≥ −aᵢ` per ray.
pub fn mmp_thresholds(k: i64) -> Result<MMPRun, ToricError> {
    mmp_thresholds_in(k, FacetFamily::TenFacet, Exec::default())
}

pub fn mmp_thresholds_in(k: i64, family: FacetFamily, exec: Exec) -> Result<MMPRun, ToricError> {
    mmp_run(k, family_facets(k, family)?, exec)
}

/// Runs the threshold search for an arbitrary 4-dimensional facet list.
pub fn mmp_run(k: i64, facets: Vec<Facet>, exec: Exec) -> Result<MMPRun, ToricError> {
    check_k(k)?;
    let mut lifted: Vec<Facet> = facets
        .iter()
        .map(|f| {
            let mut n = f.normal.clone();
            n.push(-1);
            Facet::new(n, f.offset.clone())
        })
        .collect();
    lifted.push(Facet::new(vec![0, 0, 0, 0, 1], 0));
    let p_prime = LatticePolytope::from_facets(5, lifted, exec)?;
    let thresholds: Vec<ExactScalar> = p_prime
        .vertices
        .iter()
        .map(|v| v[4].clone())
        .filter(|r| r.is_positive_lt_one())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let at = |eps: &ExactScalar| LatticePolytope::from_facets(4, shift_facets(&facets, eps), exec);
    let mut fans: Vec<IntervalFan> = Vec::new();
    let mut lower = ExactScalar::zero();
    for upper in &thresholds {
        let sample = (&lower + upper) / ExactScalar::from(2);
        let p = at(&sample)?;
        let fan = normal_fan(&p);
        let (removed_cones, added_cones) = match fans.last() {
            Some(prev) => prev.fan.cone_diff(&fan),
            None => (Vec::new(), fan.maximal_cones.clone()),
        };
        fans.push(IntervalFan {
            lower: lower.clone(),
            upper: upper.clone(),
            sample,
            vertex_count: p.vertices.len(),
            facet_count: p.genuine_facets().len(),
            fan,
            removed_cones,
            added_cones,
        });
        lower = upper.clone();
    }
    let (final_polytope, empty_beyond) = match thresholds.last() {
        Some(t) => {
            let beyond = (t + &ExactScalar::one()) / ExactScalar::from(2);
            (Some(at(t)?), at(&beyond)?.is_empty())
        }
        None => (None, false),
    };
    Ok(MMPRun {
        k,
        facets,
        p_prime_vertices: p_prime.vertices.len(),
        thresholds,
        fans,
        final_polytope,
        empty_beyond,
    })
}

trait UnitInterval {
    fn is_positive_lt_one(&self) -> bool;
}

impl UnitInterval for ExactScalar {
    fn is_positive_lt_one(&self) -> bool {
        *self > 0 && *self < 1
    }
}

/// The nine maximal cones of the final fan, with `10` standing for `ρ₁₀`.
pub const FINAL_FAN_CONES: [&[usize]; 9] = [
    &[1, 5, 6, 10],
    &[1, 5, 7, 10],
    &[5, 6, 7, 10],
    &[1, 5, 6, 7],
    &[1, 2, 3, 6, 7],
    &[2, 3, 6, 7, 10],
    &[1, 3, 7, 10],
    &[1, 2, 6, 10],
    &[1, 2, 3, 10],
];

pub const FINAL_FAN_RAYS: [usize; 7] = [1, 2, 3, 5, 6, 7, 10];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalFanReport {
    pub k: i64,
    pub thresholds: Vec<ExactScalar>,
    pub interval: Option<(ExactScalar, ExactScalar)>,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub rays: Vec<Ray>,
    /// The unique ray of the final fan that is not a ray of `P`.
    pub rho10: Option<Ray>,
    pub engine_cones: Vec<Vec<usize>>,
    /// `FINAL_FAN_CONES` with `ρ₁₀` replaced by its engine label.
    pub expected_cones: Vec<Vec<usize>>,
    pub missing: Vec<Vec<usize>>,
    pub unexpected: Vec<Vec<usize>>,
    pub rays_match: bool,
    pub ok: bool,
}

pub fn final_fan_check(k: i64) -> Result<FinalFanReport, ToricError> {
    Ok(final_fan_report(&mmp_thresholds(k)?))
}

pub fn final_fan_report(run: &MMPRun) -> FinalFanReport {
    let original: Vec<Vec<i64>> = jk_facets(run.k)
        .map(|f| f.into_iter().map(|f| f.normal).collect())
        .unwrap_or_default();
    let last = run.last_fan();
    let rays = last.map(|l| l.fan.rays.clone()).unwrap_or_default();
    let new: Vec<&Ray> = rays.iter().filter(|r| !original.contains(&r.vector)).collect();
    let rho10 = (new.len() == 1).then(|| new[0].clone());
    let map = |l: usize| match (&rho10, l) {
        (Some(r), 10) => r.label,
        (None, 10) => usize::MAX,
        _ => l,
    };
    let mut expected_cones: Vec<Vec<usize>> = FINAL_FAN_CONES
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&l| map(l)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    expected_cones.sort();
    let mut engine_cones = last.map(|l| l.fan.maximal_cones.clone()).unwrap_or_default();
    engine_cones.sort();
    let a: BTreeSet<_> = expected_cones.iter().cloned().collect();
    let b: BTreeSet<_> = engine_cones.iter().cloned().collect();
    let missing: Vec<Vec<usize>> = a.difference(&b).cloned().collect();
    let unexpected: Vec<Vec<usize>> = b.difference(&a).cloned().collect();
    let mut want: Vec<usize> = FINAL_FAN_RAYS.iter().map(|&l| map(l)).collect();
    want.sort_unstable();
    let mut have: Vec<usize> = rays.iter().map(|r| r.label).collect();
    have.sort_unstable();
    let rays_match = rho10.is_some() && want == have;
    let ok = rays_match && missing.is_empty() && unexpected.is_empty() && engine_cones.len() == FINAL_FAN_CONES.len();
    FinalFanReport {
        k: run.k,
        thresholds: run.thresholds.clone(),
        interval: last.map(|l| (l.lower.clone(), l.upper.clone())),
        vertex_count: last.map_or(0, |l| l.vertex_count),
        facet_count: last.map_or(0, |l| l.facet_count),
        rays,
        rho10,
        engine_cones,
        expected_cones,
        missing,
        unexpected,
        rays_match,
        ok,
    }
}

/// Dual basis to `(ρ₆, ρ₁, ρ₁₀, e₂)` as printed: `x, y, z, t`.
pub fn stated_dual_basis() -> [Point; 4] {
    let h = |n: i64| ExactScalar::new(n, 2);
    [
        vec![h(0), h(0), h(-1), h(-1)],
        vec![h(2), h(0), h(-1), h(-1)],
        vec![h(0), h(0), h(-1), h(1)],
        vec![h(0), h(2), h(2), h(4)],
    ]
}

/// Exponents of `u₁..u₄` in `x, y, z, t` as printed.
pub const STATED_MONOMIALS: [[i64; 4]; 4] = [[-1, 1, 0, 0], [3, 0, -1, 1], [-1, 0, -1, 0], [-1, 0, 1, 0]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub k: i64,
    /// Primitive functional vanishing on `C₀`, from the final segment.
    pub c0_functional: Vec<i64>,
    /// Labels of final-fan rays lying in `C₀`.
    pub c0_rays: Vec<usize>,
    pub rho10: Option<Vec<i64>>,
    /// Primitive integer relation on `(ρ₁, ρ₆, ρ₇, ρ₁₀)`, first entry positive.
    pub relation: Vec<i64>,
    pub relation_holds: bool,
    pub half_sum: Point,
    pub half_sum_in_n0: bool,
    pub half_sum_in_n00: bool,
    /// `[N₀ : Zρ₆ + Zρ₁ + Zρ₁₀]`.
    pub index_n00: Option<ExactScalar>,
    pub pairing: Vec<Vec<ExactScalar>>,
    pub pairing_is_identity: bool,
    pub dual_basis_matches: bool,
    pub monomials: Vec<Vec<i64>>,
    pub monomials_match: bool,
    pub ok: bool,
    pub failures: Vec<String>,
}

pub fn quotient_relations_check(k: i64) -> Result<RelationsReport, ToricError> {
    let run = mmp_thresholds(k)?;
    let fan_report = final_fan_report(&run);
    let segment_fan = run.final_polytope.as_ref().map(normal_fan);
    let c0_functional = segment_fan
        .as_ref()
        .filter(|f| f.lineality_equations.len() == 1)
        .map(|f| f.lineality_equations[0].clone())
        .ok_or_else(|| ToricError::MissingData("final polytope is not a segment".into()))?;
    let last = run
        .last_fan()
        .ok_or_else(|| ToricError::MissingData("no thresholds".into()))?;
    let c0_rays: Vec<usize> = last
        .fan
        .rays
        .iter()
        .filter(|r| r.vector.iter().zip(&c0_functional).map(|(a, b)| a * b).sum::<i64>() == 0)
        .map(|r| r.label)
        .collect();
    let rho10 = fan_report.rho10.clone().map(|r| r.vector);
    let mut failures = Vec::new();
    let get = |l: usize| last.fan.ray(l).map(<[i64]>::to_vec);
    let (Some(r1), Some(r6), Some(r7), Some(r10)) = (get(1), get(6), get(7), rho10.clone()) else {
        return Err(ToricError::MissingData("final fan lacks one of ρ₁, ρ₆, ρ₇, ρ₁₀".into()));
    };

    // integer relation among the rays spanning C₀
    let cols = [&r1, &r6, &r7, &r10];
    let rows: Vec<Vec<i64>> = (0..4).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let ker = integer_kernel_basis(&rows, 4);
    let mut relation = ker.first().cloned().unwrap_or_default();
    if relation.first().is_some_and(|&x| x < 0) {
        relation.iter_mut().for_each(|x| *x = -*x);
    }
    let direct: Vec<i64> = (0..4).map(|i| r6[i] + r7[i] + 2 * r1[i] + 2 * r10[i]).collect();
    let relation_holds = ker.len() == 1 && relation == [2, 1, 1, 2] && direct.iter().all(|&x| x == 0);
    if !relation_holds {
        failures.push(format!("relation {relation:?}, ρ₆+ρ₇+2ρ₁+2ρ₁₀ = {direct:?}"));
    }

    // ½(ρ₆+ρ₁+ρ₁₀) lies in N₀ = C₀ ∩ N but not in Zρ₆ + Zρ₁ + Zρ₁₀
    let half_sum: Point = (0..4).map(|i| ExactScalar::new(r6[i] + r1[i] + r10[i], 2)).collect();
    let half_sum_in_n0 = half_sum.iter().all(ExactScalar::is_integer) && dot(&c0_functional, &half_sum).is_zero();
    let gens: Vec<Vec<ExactScalar>> = (0..4)
        .map(|i| vec![r6[i].into(), r1[i].into(), r10[i].into()])
        .collect();
    let half_sum_in_n00 = solve_consistent(&gens, &half_sum).is_some_and(|c| c.iter().all(ExactScalar::is_integer));
    if !half_sum_in_n0 || half_sum_in_n00 {
        failures.push(format!(
            "half-sum {half_sum:?}: in N0 {half_sum_in_n0}, in N00 {half_sum_in_n00}"
        ));
    }
    let basis = integer_kernel_basis(std::slice::from_ref(&c0_functional), 4);
    let bmat: Vec<Vec<ExactScalar>> = (0..4)
        .map(|i| basis.iter().map(|b| ExactScalar::from(b[i])).collect())
        .collect();
    let coords: Option<Vec<Vec<ExactScalar>>> = [&r6, &r1, &r10]
        .iter()
        .map(|r| solve_consistent(&bmat, &to_scalars(r)))
        .collect();
    let index_n00 = coords.map(|c| determinant(&c).abs());
    if index_n00 != Some(ExactScalar::from(2)) {
        failures.push(format!("index [N0 : N00] = {index_n00:?}"));
    }

    // dual basis of (ρ₆, ρ₁, ρ₁₀, e₂)
    let basis4 = [r6.clone(), r1.clone(), r10.clone(), vec![0, 1, 0, 0]];
    let stated = stated_dual_basis();
    let pairing: Vec<Vec<ExactScalar>> = stated
        .iter()
        .map(|d| basis4.iter().map(|b| dot(b, d)).collect())
        .collect();
    let pairing_is_identity = (0..4).all(|i| (0..4).all(|j| pairing[i][j] == i64::from(i == j)));
    let bt: Vec<Vec<ExactScalar>> = basis4.iter().map(|b| to_scalars(b)).collect();
    let computed: Vec<Point> = (0..4)
        .map(|j| {
            let e: Vec<ExactScalar> = (0..4).map(|i| ExactScalar::from(i64::from(i == j))).collect();
            solve(&bt, &e).unwrap_or_default()
        })
        .collect();
    let dual_basis_matches = computed.as_slice() == stated.as_slice();
    if !pairing_is_identity || !dual_basis_matches {
        failures.push("dual basis pairing is not the identity".into());
    }
    let monomials: Vec<Vec<i64>> = (0..4).map(|i| basis4.iter().map(|b| b[i]).collect()).collect();
    let monomials_match = monomials
        .iter()
        .zip(STATED_MONOMIALS.iter())
        .all(|(a, b)| a.as_slice() == b);
    if !monomials_match {
        failures.push(format!("monomial exponents {monomials:?}"));
    }
    Ok(RelationsReport {
        k,
        c0_functional,
        c0_rays,
        rho10,
        relation,
        relation_holds,
        half_sum,
        half_sum_in_n0,
        half_sum_in_n00,
        index_n00,
        pairing,
        pairing_is_identity,
        dual_basis_matches,
        monomials,
        monomials_match,
        ok: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_k1() {
        let run = mmp_thresholds(1).unwrap();
        assert_eq!(run.thresholds, expected_thresholds(1));
        assert!(run.empty_beyond);
        let counts: Vec<usize> = run.fans.iter().map(|f| f.vertex_count).collect();
        assert_eq!(counts, vec![18, 13, 9]);
    }

    #[test]
    fn nine_facet_family_middle_threshold() {
        let run = mmp_thresholds_in(1, FacetFamily::NineFacet, Exec::Sequential).unwrap();
        assert_eq!(
            run.thresholds,
            vec![ExactScalar::new(1, 2), ExactScalar::new(3, 5), ExactScalar::new(2, 3)]
        );
    }

    #[test]
    fn final_fan_k1() {
        let r = final_fan_check(1).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.rho10.as_ref().unwrap().vector, vec![0, -1, -1, 1]);
        assert_eq!((r.vertex_count, r.facet_count), (9, 7));
    }

    #[test]
    fn relations_k1() {
        let r = quotient_relations_check(1).unwrap();
        assert!(r.ok, "{:?}", r.failures);
        assert_eq!(r.c0_functional, vec![0, 1, 1, 2]);
        assert_eq!(r.c0_rays, vec![1, 6, 7, 9]);
    }
}
