//! Small exact dense linear algebra: Gaussian elimination over Q and over
//! cyclotomic fields, used by the mark-morphism membership oracle and the
//! species-matrix invertibility checks.

use crate::cyclotomic::{CycNum, Rat};
use num::Zero;

/// Solves A x = b for each right-hand-side column; None when A is singular.
pub fn solve_rational(a: &[Vec<Rat>], rhs: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    if n == 0 {
        return Some(rhs.iter().map(|_| Vec::new()).collect());
    }
    let k = rhs.len();
    // augmented matrix rows: A | b_0 .. b_{k-1}
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            for b in rhs {
                row.push(b[i].clone());
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = Rat::new(
            m[col][col].denom().clone(),
            m[col][col].numer().clone(),
        );
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n + k {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(
        (0..k)
            .map(|j| (0..n).map(|i| m[i][n + j].clone()).collect())
            .collect(),
    )
}

pub fn invertible_rational(a: &[Vec<Rat>]) -> bool {
    let n = a.len();
    let zero_rhs = vec![vec![Rat::zero(); n]];
    solve_rational(a, &zero_rhs).is_some()
}

/// Full-rank test over Q(zeta) by elimination with exact cyclotomic
/// division.
pub fn invertible_cyclotomic(a: &[Vec<CycNum>]) -> bool {
    let n = a.len();
    if n == 0 {
        return true;
    }
    let mut m: Vec<Vec<CycNum>> = a.to_vec();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return false,
        };
        m.swap(col, pivot);
        let inv = m[col][col].inv().expect("nonzero pivot");
        for x in m[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let delta = f.mul(&m[col][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
    }
    true
}
