//! The polytope `P` of the threefold family and the shifted family `P(ε)`.

use exactcore::par::Exec;
use exactcore::ExactScalar;

use crate::polytope::{Facet, LatticePolytope, Point};
use crate::{check_k, ToricError};

/// Which rays beyond `ρ₁..ρ₈` enter the shifted family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetFamily {
    /// `ρ₁..ρ₈` and `ρ₉ = (0,−1,−1,1)`, `a₉ = 1`: the weighted blowup of `⟨ρ₅,ρ₈⟩`.
    NineFacet,
    /// Additionally `(−2k,−2k,−2k,2k+1)` with `a = 2k`: the weighted blowup of `⟨ρ₄,ρ₈⟩`.
    TenFacet,
}

/// The eight facet pairs `(ρᵢ, aᵢ)` of `P`.
pub fn jk_facets(k: i64) -> Result<Vec<Facet>, ToricError> {
    check_k(k)?;
    let (p, q) = (4 * k + 1, 4 * k + 3);
    Ok(vec![
        Facet::new(vec![1, 0, 0, 0], 0),
        Facet::new(vec![0, 1, 0, 0], 0),
        Facet::new(vec![0, 0, 1, 0], 0),
        Facet::new(vec![0, 0, 0, 1], 0),
        Facet::new(vec![p, -1, -1, -1], 1),
        Facet::new(vec![-1, 3, -1, -1], 1),
        Facet::new(vec![-1, -1, 3, -1], 1),
        Facet::new(vec![-p, -p, -p, q], p),
    ])
}

/// `ρ₉ = (ρ₅ + ρ₈)/(4k+2)` with `a₉ = 1`.
pub fn rho9() -> Facet {
    Facet::new(vec![0, -1, -1, 1], 1)
}

/// `(2k·ρ₈ + ρ₄)/(4k+1)` with offset `2k`.
pub fn rho_tau2(k: i64) -> Facet {
    Facet::new(vec![-2 * k, -2 * k, -2 * k, 2 * k + 1], 2 * k)
}

pub fn family_facets(k: i64, family: FacetFamily) -> Result<Vec<Facet>, ToricError> {
    let mut f = jk_facets(k)?;
    f.push(rho9());
    if family == FacetFamily::TenFacet {
        f.push(rho_tau2(k));
    }
    Ok(f)
}

/// Offsets `aᵢ − ε`.
pub fn shift_facets(facets: &[Facet], eps: &ExactScalar) -> Vec<Facet> {
    facets
        .iter()
        .map(|f| Facet {
            normal: f.normal.clone(),
            offset: &f.offset - eps,
        })
        .collect()
}

pub fn jk_polytope(k: i64) -> Result<LatticePolytope, ToricError> {
    LatticePolytope::from_facets(4, jk_facets(k)?, Exec::default())
}

/// The vertices `u₀..u₅` listed for `P`, in lexicographic order.
pub fn expected_jk_vertices(k: i64) -> Vec<Point> {
    let pt = |v: [i64; 4]| v.iter().map(|&x| ExactScalar::from(x)).collect::<Point>();
    let mut v = vec![
        pt([0, 0, 0, 0]),
        pt([1, 0, 0, 0]),
        pt([0, 1, 0, 0]),
        pt([0, 0, 1, 0]),
        pt([0, 0, 0, 1]),
        pt([2, 2 * k + 1, 2 * k + 1, 4 * k + 1]),
    ];
    v.sort();
    v
}

/// `P(ε)` from the nine-facet family.
pub fn epsilon_polytope(k: i64, eps: &ExactScalar) -> Result<LatticePolytope, ToricError> {
    epsilon_polytope_in(k, FacetFamily::NineFacet, eps, Exec::default())
}

pub fn epsilon_polytope_in(
    k: i64,
    family: FacetFamily,
    eps: &ExactScalar,
    exec: Exec,
) -> Result<LatticePolytope, ToricError> {
    if eps.is_negative() || *eps >= 1 {
        return Err(ToricError::EpsilonOutOfRange(eps.to_string()));
    }
    LatticePolytope::from_facets(4, shift_facets(&family_facets(k, family)?, eps), exec)
}
