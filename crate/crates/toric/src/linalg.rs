//! Small exact linear algebra over `Q` and `Z`.

use exactcore::scalar::gcd_i64;
use exactcore::ExactScalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<ExactScalar>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<ExactScalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solution of a square system, or `None` if the matrix is singular.
pub fn solve(a: &[Vec<ExactScalar>], b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let n = a.len();
    let mut m: Vec<Vec<ExactScalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Some solution of a possibly non-square consistent system, or `None` if inconsistent.
pub fn solve_consistent(a: &[Vec<ExactScalar>], b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<ExactScalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![ExactScalar::zero(); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

/// A basis of the rational null space `{x : A x = 0}`.
pub fn kernel(rows: &[Vec<ExactScalar>], n: usize) -> Vec<Vec<ExactScalar>> {
    let mut m = rows.to_vec();
    let piv = rref(&mut m);
    (0..n)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = vec![ExactScalar::zero(); n];
            v[free] = ExactScalar::one();
            for (i, &c) in piv.iter().enumerate() {
                v[c] = -&m[i][free];
            }
            v
        })
        .collect()
}

pub fn determinant(a: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = ExactScalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return ExactScalar::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m[c + 1..n].iter_mut() {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..n].iter_mut().zip(&pivot[c..n]) {
                *x -= &(&f * p);
            }
        }
    }
    det
}

/// The integer multiple of `v` with coprime entries, keeping its direction.
pub fn primitive(v: &[ExactScalar]) -> Vec<i64> {
    let lcm = v.iter().fold(1i64, |l, x| {
        let d = ExactScalar::from_int(x.denom().clone())
            .to_i64()
            .expect("denominator fits in i64");
        l / gcd_i64(l, d) * d
    });
    let scale = ExactScalar::from(lcm);
    let ints: Vec<i64> = v
        .iter()
        .map(|x| (x * &scale).to_i64().expect("coordinates fit in i64"))
        .collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd_i64(g, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn to_scalars(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| ExactScalar::from(x)).collect()
}

pub fn dot(n: &[i64], m: &[ExactScalar]) -> ExactScalar {
    n.iter().zip(m).map(|(&a, b)| ExactScalar::from(a) * b).sum()
}

/// A lattice basis of `{x ∈ Zⁿ : A x = 0}`, by unimodular column reduction.
pub fn integer_kernel_basis(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut c = 0;
    for i in 0..a.len() {
        if c == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (c..n).filter(|&j| a[i][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap(&mut a, c, j);
                    swap(&mut u, c, j);
                    c += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[i][j].abs()).unwrap();
            for &j in &nz {
                if j != p {
                    let f = a[i][j] / a[i][p];
                    col_op(&mut a, j, p, f);
                    col_op(&mut u, j, p, f);
                }
            }
        }
    }
    (c..n)
        .map(|j| {
            u.iter()
                .map(|row| i64::try_from(row[j]).expect("kernel entry fits in i64"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    #[test]
    fn solves_and_detects_singular() {
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve(&a, &[q(3, 1), q(4, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(1, 1)]);
        let s = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(solve(&s, &[q(1, 1), q(1, 1)]).is_none());
        assert_eq!(determinant(&a), q(5, 1));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[q(1, 2), q(-1, 3), q(0, 1)]), vec![3, -2, 0]);
        assert_eq!(primitive_int(&[4, -6, 2]), vec![2, -3, 1]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let b = integer_kernel_basis(&[vec![0, 1, 1, 2]], 4);
        assert_eq!(b.len(), 3);
        for v in &b {
            assert_eq!(v[1] + v[2] + 2 * v[3], 0);
        }
        let m: Vec<Vec<ExactScalar>> = (0..4)
            .map(|i| b.iter().map(|v| ExactScalar::from(v[i])).collect())
            .collect();
        for w in [[1, 0, 0, 0], [0, 1, -1, 0], [0, 2, 0, -1]] {
            let c = solve_consistent(&m, &to_scalars(&w)).unwrap();
            assert!(c.iter().all(ExactScalar::is_integer), "{w:?}");
        }
    }

    #[test]
    fn rational_kernel() {
        let k = kernel(&[to_scalars(&[1, 1, 0]), to_scalars(&[0, 1, 1])], 3);
        assert_eq!(k, vec![to_scalars(&[1, -1, 1])]);
    }
}
