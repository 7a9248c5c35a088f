//! Linear algebra over the residue field κ.
//!
//! Matrices are row-major `Vec<Vec<FieldElement>>`; all routines are plain
//! Gauss–Jordan elimination with leftmost pivots, so results depend only on
//! the basis order.

use alloc::vec::Vec;

use crate::novikov::{Field, FieldElement};

/// Reduced row echelon form, returning the pivot column of each nonzero row.
pub fn rref(m: &mut [Vec<FieldElement>]) -> Vec<usize> {
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
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let sub = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<FieldElement>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Solve `A x = b` (`A` is `m × n` acting on columns). The returned
/// solution is supported on the leftmost possible pivot columns, which is
/// the lexicographically minimal support in the basis order.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement], field: Field) -> Option<Vec<FieldElement>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = alloc::vec![field.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`.
pub fn kernel(a: &[Vec<FieldElement>], n: usize, field: Field) -> Vec<Vec<FieldElement>> {
    let mut work = a.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![field.zero(); n];
        v[free] = field.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&work[r][free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<FieldElement>> {
        rows.iter().map(|r| r.iter().map(|&x| Field::Rational.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_and_solve() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        let b: Vec<_> = [1, 2, 1].iter().map(|&x| Field::Rational.from_i64(x)).collect();
        let x = solve(&a, &b, Field::Rational).unwrap();
        assert_eq!(x, q(&[&[-1, 1, 0]])[0]);
        let bad: Vec<_> = [1, 3, 0].iter().map(|&x| Field::Rational.from_i64(x)).collect();
        assert!(solve(&a, &bad, Field::Rational).is_none());
        let k = kernel(&a, 3, Field::Rational);
        assert_eq!(k.len(), 1);
    }
}
