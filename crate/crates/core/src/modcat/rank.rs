//! Rank function `N_M(t) = dim_κ (T^t M ⊗ κ)` straight from the matrix.
//!
//! This deliberately avoids the elimination code. The determinantal
//! divisors `d_k = min val(k×k minors)` are computed from exact minors of
//! the lifted entries, the invariant factors are `c_k = d_k − d_{k−1}`, and
//! `N(t) = n − #{k : c_k ≤ t}`. Exact minors see cancellations that a
//! valuation-only shortcut would miss.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::novikov::{Exponent, NovikovScalar, Rational, Ring};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Minimal valuation of the `k × k` minors for `k = 0..=min(rows, cols)`,
/// computed with all entries lifted to infinite cutoff.
pub fn determinantal_divisors(m: &Matrix) -> Vec<Exponent> {
    let exact = m.with_cutoff(&Exponent::Infinite);
    let ring = exact.ring().clone();
    let (r, c) = (exact.rows(), exact.cols());
    let kmax = r.min(c);
    let mut d = alloc::vec![Exponent::Infinite; kmax + 1];
    d[0] = Exponent::zero();
    for k in 1..=kmax {
        for rows in subsets(r, k) {
            for (_, det) in minors_on_rows(&exact, &rows, &ring) {
                let v = det.valuation();
                if v < d[k] {
                    d[k] = v;
                }
            }
        }
    }
    d
}

/// Determinants of `rows × S` for every column set `S` of size
/// `rows.len()`, by expansion along the last row with memoisation on the
/// column bitmask.
fn minors_on_rows(m: &Matrix, rows: &[usize], ring: &Ring) -> BTreeMap<u64, NovikovScalar> {
    assert!(m.cols() < 64, "too many columns for minor enumeration");
    let mut level: BTreeMap<u64, NovikovScalar> = BTreeMap::new();
    level.insert(0, NovikovScalar::one(ring));
    for (depth, &row) in rows.iter().enumerate() {
        let mut next: BTreeMap<u64, NovikovScalar> = BTreeMap::new();
        for (&mask, det) in &level {
            if det.is_zero() {
                continue;
            }
            for col in 0..m.cols() {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let entry = m.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << col);
                // position of `col` among the chosen columns fixes the sign
                let pos = (new_mask & ((1u64 << col) - 1)).count_ones() as usize;
                let term = entry * det;
                let term = if (depth + pos) % 2 == 1 { -&term } else { term };
                let slot = next.entry(new_mask).or_insert_with(|| NovikovScalar::zero(ring));
                *slot = &*slot + &term;
            }
        }
        level = next;
    }
    level
}

/// Invariant factors `c_1 ≤ c_2 ≤ …` of the lifted matrix; one per unit of
/// its rank over the Novikov field.
pub fn invariant_factors(m: &Matrix) -> Vec<Rational> {
    let d = determinantal_divisors(m);
    let mut out = Vec::new();
    for k in 1..d.len() {
        match (&d[k], &d[k - 1]) {
            (Exponent::Finite(a), Exponent::Finite(b)) => out.push(a - b),
            _ => break,
        }
    }
    out
}

/// `N_M(t)` for the module presented by `m` (rows are relations). Factors
/// at or past the cutoff vanish in the truncation and count as free.
pub fn rank_function(m: &Matrix, t: &Rational) -> usize {
    let cutoff = m.ring().cutoff.clone();
    let dead = invariant_factors(m).into_iter().filter(|c| c <= t && cutoff.exceeds(c)).count();
    m.cols() - dead
}
