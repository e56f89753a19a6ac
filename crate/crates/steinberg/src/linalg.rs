//! Small exact linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Row-reduces `m` in place and returns the pivot columns.
fn reduce(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
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
            *x = &*x * &inv;
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
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    reduce(&mut m).len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    rank(&m)
}

/// Coefficients `x` with `sum_k x[k] * basis[k] == v`, if `v` lies in the span.
/// The basis is assumed linearly independent.
pub fn express(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = v.len();
    // one equation per coordinate, augmented with v
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|c| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[c].clone()).collect();
            row.push(v[c].clone());
            row
        })
        .collect();
    let pivots = reduce(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][k].clone();
    }
    Some(x)
}

/// Unique solution of the square system `a x = b`.
pub fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect();
    if rank(&cols) < n {
        return None;
    }
    express(&cols, b)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn express_in_basis() {
        let basis = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = express(&basis, &[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(express(&[vec![q(1), q(0)]], &[q(0), q(1)]).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_int(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_int(&[vec![1, 2], vec![2, 3]]), 2);
    }
}
