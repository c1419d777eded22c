//! Exact linear algebra over the Gaussian rationals.

use crate::coeff::Gq;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// The unique solution.
    Unique(Vec<Gq>),
    /// No solution exists.
    Inconsistent,
    /// Solutions exist but the listed unknowns are free.
    Underdetermined {
        /// A solution with the free unknowns set to zero.
        particular: Vec<Gq>,
        /// Indices of the free unknowns.
        free: Vec<usize>,
    },
}

/// Solves `A x = b` by exact Gauss–Jordan elimination. `a` is row-major with `n` columns.
pub fn solve(a: &[Vec<Gq>], b: &[Gq], n: usize) -> Solution {
    let m = a.len();
    let mut rows: Vec<Vec<Gq>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.resize(n, Gq::zero());
            v.push(bi.clone());
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Gq::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    if pivots.len() == n {
        Solution::Unique(x)
    } else {
        let free = (0..n).filter(|c| !pivots.contains(c)).collect();
        Solution::Underdetermined { particular: x, free }
    }
}

/// Determinant of a square matrix.
pub fn det(a: &[Vec<Gq>]) -> Gq {
    let n = a.len();
    let mut m: Vec<Vec<Gq>> = a.to_vec();
    let mut acc = Gq::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else { return Gq::zero() };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let piv = m[col][col].clone();
        acc = &acc * &piv;
        let inv = piv.inv().unwrap();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let t = &f * &m[col][j];
                m[i][j] -= &t;
            }
        }
    }
    acc
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(a: &[Vec<Gq>]) -> Option<Vec<Vec<Gq>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Gq::zero(); n];
        e[j] = Gq::one();
        match solve(a, &e, n) {
            Solution::Unique(x) => cols.push(x),
            _ => return None,
        }
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[i64]]) -> Vec<Vec<Gq>> {
        v.iter().map(|r| r.iter().map(|&x| Gq::from_int(x)).collect()).collect()
    }

    #[test]
    fn unique_and_singular() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![Gq::from_int(3), Gq::from_int(4)];
        assert_eq!(solve(&a, &b, 2), Solution::Unique(vec![Gq::one(), Gq::one()]));
        assert_eq!(det(&a), Gq::from_int(5));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&s, &[Gq::one(), Gq::one()], 2), Solution::Inconsistent);
        assert!(matches!(solve(&s, &[Gq::one(), Gq::from_int(2)], 2), Solution::Underdetermined { .. }));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[-2, 1], &[1, 0]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[0, 1], &[1, 2]]));
    }
}
