//! Polytopes given by inequalities `⟨ρᵢ, m⟩ ≥ −aᵢ`, their vertices and normal fans.

use std::collections::BTreeSet;

use exactcore::par::{map_indexed, Exec};
use exactcore::ExactScalar;

use crate::linalg::{dot, integer_kernel_basis, kernel, primitive, rank, solve, to_scalars};
use crate::ToricError;

pub const MAX_DIM: usize = 5;
pub const MAX_FACETS: usize = 16;

pub type Point = Vec<ExactScalar>;

/// The half-space `⟨normal, m⟩ ≥ −offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: ExactScalar,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: impl Into<ExactScalar>) -> Self {
        Self {
            normal,
            offset: offset.into(),
        }
    }

    /// `⟨normal, m⟩ + offset`, nonnegative exactly on the half-space.
    pub fn slack(&self, m: &[ExactScalar]) -> ExactScalar {
        dot(&self.normal, m) + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub ambient_dim: usize,
    pub facets: Vec<Facet>,
    /// Lexicographically sorted.
    pub vertices: Vec<Point>,
}

impl LatticePolytope {
    pub fn from_facets(ambient_dim: usize, facets: Vec<Facet>, exec: Exec) -> Result<Self, ToricError> {
        let vertices = vertices_from_facets(ambient_dim, &facets, exec)?;
        Ok(Self {
            ambient_dim,
            facets,
            vertices,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, m: &[ExactScalar]) -> bool {
        self.facets.iter().all(|f| !f.slack(m).is_negative())
    }

    /// Affine dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        affine_dim(&self.vertices)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient_dim)
    }

    /// Indices of the inequalities tight at `m`.
    pub fn active(&self, m: &[ExactScalar]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| self.facets[i].slack(m).is_zero())
            .collect()
    }

    /// Indices of inequalities that cut out a facet: tight on an affinely
    /// `(dim−1)`-dimensional set of vertices but not on the whole polytope.
    pub fn genuine_facets(&self) -> Vec<usize> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        (0..self.facets.len())
            .filter(|&i| {
                let on: Vec<Point> = self
                    .vertices
                    .iter()
                    .filter(|v| self.facets[i].slack(v).is_zero())
                    .cloned()
                    .collect();
                on.len() < self.vertices.len() && affine_dim(&on) == Some(d - 1)
            })
            .collect()
    }
}

fn affine_dim(points: &[Point]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<ExactScalar>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Vertices by solving every `dim`-subset of the inequalities as equalities and
/// keeping the feasible solutions. Fails if the polyhedron is nonempty and unbounded.
pub fn vertices_from_facets(dim: usize, facets: &[Facet], exec: Exec) -> Result<Vec<Point>, ToricError> {
    if dim == 0 || dim > MAX_DIM || facets.len() > MAX_FACETS {
        return Err(ToricError::TooLarge {
            dim,
            facets: facets.len(),
        });
    }
    if let Some(f) = facets.iter().find(|f| f.normal.len() != dim) {
        return Err(ToricError::DimensionMismatch {
            expected: dim,
            got: f.normal.len(),
        });
    }
    let normals: Vec<Vec<ExactScalar>> = facets.iter().map(|f| to_scalars(&f.normal)).collect();
    if rank(&normals) < dim {
        let dir = kernel(&normals, dim)
            .into_iter()
            .next()
            .expect("rank deficit gives a kernel vector");
        return Err(ToricError::Unbounded {
            direction: primitive(&dir),
        });
    }
    let subsets = combinations(facets.len(), dim);
    let found = map_indexed(exec, subsets.len(), |s| {
        let idx = &subsets[s];
        let a: Vec<Vec<ExactScalar>> = idx.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<ExactScalar> = idx.iter().map(|&i| -&facets[i].offset).collect();
        solve(&a, &b).filter(|m| facets.iter().all(|f| !f.slack(m).is_negative()))
    });
    let vertices: Vec<Point> = found
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if !vertices.is_empty() {
        if let Some(ray) = recession_ray(dim, &normals) {
            return Err(ToricError::Unbounded { direction: ray });
        }
    }
    Ok(vertices)
}

/// An extreme ray of `{d : ⟨ρᵢ, d⟩ ≥ 0}` when that cone is nontrivial.
fn recession_ray(dim: usize, normals: &[Vec<ExactScalar>]) -> Option<Vec<i64>> {
    for idx in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<ExactScalar>> = idx.iter().map(|&i| normals[i].clone()).collect();
        let ker = kernel(&rows, dim);
        if ker.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let d: Vec<ExactScalar> = ker[0].iter().map(|x| x * &ExactScalar::from(sign)).collect();
            let inner = |n: &Vec<ExactScalar>| -> ExactScalar { n.iter().zip(&d).map(|(a, b)| a * b).sum() };
            if normals.iter().all(|n| !inner(n).is_negative()) {
                return Some(primitive(&d));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    /// One-based index of the inequality the ray is the normal of.
    pub label: usize,
    pub vector: Vec<i64>,
}

/// Normal fan; for a lower-dimensional polytope every cone contains the
/// lineality space `{n : ⟨eⱼ, n⟩ = 0}` cut out by `lineality_equations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub ambient_dim: usize,
    pub rays: Vec<Ray>,
    /// Sorted ray labels, one cone per vertex in vertex order.
    pub maximal_cones: Vec<Vec<usize>>,
    pub lineality_dim: usize,
    /// Primitive integer functionals spanning the directions of the polytope.
    pub lineality_equations: Vec<Vec<i64>>,
    /// Lattice basis of the lineality space intersected with `Zⁿ`.
    pub lineality_basis: Vec<Vec<i64>>,
}

impl Fan {
    pub fn ray_labels(&self) -> Vec<usize> {
        self.rays.iter().map(|r| r.label).collect()
    }

    pub fn ray(&self, label: usize) -> Option<&[i64]> {
        self.rays.iter().find(|r| r.label == label).map(|r| r.vector.as_slice())
    }

    pub fn is_generalized(&self) -> bool {
        self.lineality_dim > 0
    }

    /// Cones of `self` absent from `other`, and cones of `other` absent from `self`.
    pub fn cone_diff(&self, other: &Fan) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let a: BTreeSet<_> = self.maximal_cones.iter().cloned().collect();
        let b: BTreeSet<_> = other.maximal_cones.iter().cloned().collect();
        (a.difference(&b).cloned().collect(), b.difference(&a).cloned().collect())
    }
}

pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let n = p.ambient_dim;
    let Some(d) = p.dim() else {
        return Fan {
            ambient_dim: n,
            rays: Vec::new(),
            maximal_cones: Vec::new(),
            lineality_dim: n,
            lineality_equations: Vec::new(),
            lineality_basis: Vec::new(),
        };
    };
    let genuine = p.genuine_facets();
    let rays = genuine
        .iter()
        .map(|&i| Ray {
            label: i + 1,
            vector: primitive(&to_scalars(&p.facets[i].normal)),
        })
        .collect();
    let maximal_cones = p
        .vertices
        .iter()
        .map(|v| {
            genuine
                .iter()
                .filter(|&&i| p.facets[i].slack(v).is_zero())
                .map(|&i| i + 1)
                .collect()
        })
        .collect();
    let (lineality_equations, lineality_basis) = if d < n {
        let first = &p.vertices[0];
        let mut diffs: Vec<Vec<ExactScalar>> = p.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect();
        let piv = crate::linalg::rref(&mut diffs);
        let eqs: Vec<Vec<i64>> = diffs[..piv.len()].iter().map(|r| primitive(r)).collect();
        let basis = integer_kernel_basis(&eqs, n);
        (eqs, basis)
    } else {
        (Vec::new(), Vec::new())
    };
    Fan {
        ambient_dim: n,
        rays,
        maximal_cones,
        lineality_dim: n - d,
        lineality_equations,
        lineality_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Facet> {
        vec![
            Facet::new(vec![1, 0], 0),
            Facet::new(vec![0, 1], 0),
            Facet::new(vec![-1, 0], 1),
            Facet::new(vec![0, -1], 1),
        ]
    }

    #[test]
    fn unit_square() {
        let p = LatticePolytope::from_facets(2, square(), Exec::Sequential).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.vertices[0], to_scalars(&[0, 0]));
        assert_eq!(p.vertices[3], to_scalars(&[1, 1]));
        let fan = normal_fan(&p);
        assert_eq!(fan.maximal_cones.len(), 4);
        assert_eq!(fan.rays.len(), 4);
        assert_eq!(fan.maximal_cones[0], vec![1, 2]);
        assert!(!fan.is_generalized());
    }

    #[test]
    fn detects_unbounded() {
        let half = vec![
            Facet::new(vec![1, 0], 0),
            Facet::new(vec![0, 1], 0),
            Facet::new(vec![-1, 0], 1),
        ];
        match vertices_from_facets(2, &half, Exec::Sequential) {
            Err(ToricError::Unbounded { direction }) => assert_eq!(direction, vec![0, 1]),
            other => panic!("{other:?}"),
        }
        let strip = vec![Facet::new(vec![1, 0], 0), Facet::new(vec![-1, 0], 1)];
        assert!(matches!(
            vertices_from_facets(2, &strip, Exec::Sequential),
            Err(ToricError::Unbounded { .. })
        ));
    }

    #[test]
    fn empty_and_redundant() {
        let mut f = square();
        f.push(Facet::new(vec![1, 1], -3));
        let p = LatticePolytope::from_facets(2, f, Exec::Sequential).unwrap();
        assert!(p.is_empty());
        let mut g = square();
        g.push(Facet::new(vec![-1, -1], 2));
        let p = LatticePolytope::from_facets(2, g, Exec::Sequential).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.genuine_facets(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn segment_has_lineality() {
        // the diagonal of the unit square
        let mut f = square();
        f.push(Facet::new(vec![1, -1], 0));
        f.push(Facet::new(vec![-1, 1], 0));
        let p = LatticePolytope::from_facets(2, f, Exec::Sequential).unwrap();
        assert_eq!(p.vertices.len(), 2);
        let fan = normal_fan(&p);
        assert_eq!(fan.lineality_dim, 1);
        assert_eq!(fan.lineality_equations, vec![vec![1, 1]]);
        assert_eq!(fan.lineality_basis.len(), 1);
        assert_eq!(fan.maximal_cones.len(), 2);
    }

    #[test]
    fn rejects_oversized_input() {
        let f: Vec<Facet> = (0..17).map(|_| Facet::new(vec![1, 0], 0)).collect();
        assert!(matches!(
            vertices_from_facets(2, &f, Exec::Sequential),
            Err(ToricError::TooLarge { .. })
        ));
    }
}
