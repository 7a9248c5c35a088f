//! Elementary-divisor elimination over the valuation ring.
//!
//! Pivots are chosen with minimal valuation (ties: lowest row, then lowest
//! column). Clearing a pivot `p = T^v·u` from another row needs the
//! quotient `e / p = (e / T^v)·u⁻¹`. When `u` is a constant or the cutoff is
//! finite that quotient is computed directly. At infinite cutoff with a
//! non-constant unit the row is instead rescaled by `u` first
//! (`row ← u·row − (e/T^v)·pivot_row`), which is invertible over `Λ₀` and
//! needs no series inverse, so the result stays exact.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::matrix::Matrix;
use crate::novikov::{Exponent, NovikovScalar, Rational};

pub(crate) struct Reduction {
    /// `(row, column, valuation)` per pivot, in elimination order.
    pub pivots: Vec<(usize, usize, Rational)>,
    /// Row operations applied to the identity, when requested.
    pub transform: Option<Matrix>,
}

enum Quotient {
    /// `target ← target − q·source`
    Plain(NovikovScalar),
    /// `target ← u·target − q·source`
    Scaled(NovikovScalar, NovikovScalar),
}

fn quotient(entry: &NovikovScalar, v: &Rational, unit: &NovikovScalar, unit_inv: Option<&NovikovScalar>) -> Quotient {
    let q = entry.div_monomial(v);
    match unit_inv {
        Some(inv) => Quotient::Plain(&q * inv),
        None => Quotient::Scaled(unit.clone(), q),
    }
}

fn apply_rows(m: &mut Matrix, target: usize, source: usize, op: &Quotient) {
    for j in 0..m.cols() {
        let t = m.get(target, j).clone();
        let s = m.get(source, j);
        let new = match op {
            Quotient::Plain(q) => {
                if s.is_zero() {
                    continue;
                }
                &t - &(q * s)
            }
            Quotient::Scaled(u, q) => &(u * &t) - &(q * s),
        };
        m.set(target, j, new);
    }
}

fn apply_cols(m: &mut Matrix, target: usize, source: usize, op: &Quotient) {
    for i in 0..m.rows() {
        let t = m.get(i, target).clone();
        let s = m.get(i, source);
        let new = match op {
            Quotient::Plain(q) => {
                if s.is_zero() {
                    continue;
                }
                &t - &(q * s)
            }
            Quotient::Scaled(u, q) => &(u * &t) - &(q * s),
        };
        m.set(i, target, new);
    }
}

/// Diagonalize `m` in place. On return every nonzero entry is a pivot and
/// pivots occupy distinct rows and columns.
pub(crate) fn reduce(m: &mut Matrix, track_rows: bool) -> Reduction {
    let ring = m.ring().clone();
    let mut transform = track_rows.then(|| Matrix::identity(m.rows(), &ring));
    let mut row_done = alloc::vec![false; m.rows()];
    let mut col_done = alloc::vec![false; m.cols()];
    let mut pivots = Vec::new();

    loop {
        let mut best: Option<(usize, usize, Exponent)> = None;
        for i in (0..m.rows()).filter(|&i| !row_done[i]) {
            for j in (0..m.cols()).filter(|&j| !col_done[j]) {
                let v = m.get(i, j).valuation();
                if v.is_infinite() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => v.cmp(b) == Ordering::Less,
                };
                if better {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((r, s, Exponent::Finite(v))) = best else {
            break;
        };
        let p = m.get(r, s).clone();
        let unit = p.div_monomial(&v);
        let unit_inv = if unit.is_monomial() || ring.cutoff.is_finite() {
            Some(unit.inv().expect("unit part of a pivot is invertible"))
        } else {
            None
        };

        for i in 0..m.rows() {
            if i == r || m.get(i, s).is_zero() {
                continue;
            }
            let op = quotient(m.get(i, s), &v, &unit, unit_inv.as_ref());
            apply_rows(m, i, r, &op);
            if let Some(t) = transform.as_mut() {
                apply_rows(t, i, r, &op);
            }
        }
        for j in 0..m.cols() {
            if j == s || m.get(r, j).is_zero() {
                continue;
            }
            let op = quotient(m.get(r, j), &v, &unit, unit_inv.as_ref());
            apply_cols(m, j, s, &op);
        }
        row_done[r] = true;
        col_done[s] = true;
        pivots.push((r, s, v));
    }
    Reduction { pivots, transform }
}

/// Basis of the left kernel `{x : x·G = 0}` over `Λ₀`, as rows.
///
/// Needs an infinite cutoff: over a truncation the ring has zero divisors
/// and the zero rows of the reduced matrix no longer span the kernel.
pub fn left_kernel(g: &Matrix) -> Matrix {
    assert!(g.ring().cutoff.is_infinite(), "left kernel needs an exact (infinite-cutoff) matrix");
    let mut work = g.clone();
    let red = reduce(&mut work, true);
    let transform = red.transform.expect("transform requested");
    let pivot_rows: Vec<usize> = red.pivots.iter().map(|(r, _, _)| *r).collect();
    let kernel_rows: Vec<usize> = (0..g.rows()).filter(|r| !pivot_rows.contains(r)).collect();
    let all_cols: Vec<usize> = (0..g.rows()).collect();
    transform.select(&kernel_rows, &all_cols)
}
