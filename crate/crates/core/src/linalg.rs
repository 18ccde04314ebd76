//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
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
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][free].clone();
        }
        out.push(v);
    }
    out
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    aug = r;
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates of `v` in the span of the rows of `basis`, if it lies there.
pub fn solve_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = v.len();
    // columns are basis vectors, augmented by v
    let m: Matrix = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).chain([v[i].clone()]).collect())
        .collect();
    let (r, pivots) = rref(&m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn inverse_and_rank() {
        let a = from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert_eq!(inv, from_ints(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&from_ints(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(rank(&from_ints(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_basis() {
        let a = from_ints(&[&[1, 1, 0]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((v[0].clone() + v[1].clone()).is_zero());
        }
        assert_eq!(nullspace(&Vec::new(), 2).len(), 2);
    }

    #[test]
    fn span_solve() {
        let b = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)]];
        assert_eq!(solve_in_span(&b, &[rat(3, 1), rat(2, 1)]), Some(vec![rat(1, 1), rat(2, 1)]));
        let b = vec![vec![rat(1, 1), rat(1, 1)]];
        assert_eq!(solve_in_span(&b, &[rat(1, 1), rat(2, 1)]), None);
    }
}
