//! Non-equivariant `(a, b)`-isomorphism distance between plain barcodes.
//!
//! Bars `[s, e)` and `[s', e')` of the same degree can be matched by
//! `α: E → T_a F`, `β: F → T_b E` when `s − s' ≤ a`, `e − e' ≤ a`,
//! `s' − s ≤ b` and `e' − e ≤ b`; a bar of length `ℓ ≤ a + b` may be sent
//! to zero. The distance is the infimum of `a + b`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::matching::augmented_perfect_matching;
use crate::barcode::{PlainBar, PlainBarcode};
use crate::novikov::{Exponent, Rational};

fn within(x: &Exponent, y: &Exponent, slack: &Rational) -> bool {
    // x − y ≤ slack, with ∞ − ∞ = 0
    match (x, y) {
        (Exponent::Infinite, Exponent::Infinite) => true,
        (Exponent::Infinite, _) => false,
        (_, Exponent::Infinite) => true,
        (Exponent::Finite(x), Exponent::Finite(y)) => &(x - y) <= slack,
    }
}

fn pair_ok(p: &PlainBar, q: &PlainBar, a: &Rational, b: &Rational) -> bool {
    let (ps, qs) = (Exponent::Finite(p.birth.clone()), Exponent::Finite(q.birth.clone()));
    p.degree == q.degree
        && within(&ps, &qs, a)
        && within(&qs, &ps, b)
        && within(&p.death(), &q.death(), a)
        && within(&q.death(), &p.death(), b)
}

fn killable(p: &PlainBar, sum: &Rational) -> bool {
    p.length.cmp_rational(sum) != core::cmp::Ordering::Greater
}

/// Matching witnessing an `(a, b)`-isomorphism, if one exists.
pub fn plain_feasible(x: &PlainBarcode, y: &PlainBarcode, a: &Rational, b: &Rational) -> Option<Vec<Option<usize>>> {
    let (xs, ys) = (x.bars(), y.bars());
    let sum = a + b;
    augmented_perfect_matching(
        xs.len(),
        ys.len(),
        |i, j| pair_ok(&xs[i], &ys[j], a, b),
        |i| killable(&xs[i], &sum),
        |j| killable(&ys[j], &sum),
    )
}

/// `inf { a + b : (a, b)-isomorphic }`.
///
/// For a fixed matching pattern the constraints read `a ≥ Xᵢ`, `b ≥ Yⱼ`,
/// `a + b ≥ ℓₖ`, so an optimum takes `a` at a positive endpoint difference
/// `s − s'`, `e − e'` or at 0, and `b` at such a difference or `ℓ − a`.
pub fn plain_distance(x: &PlainBarcode, y: &PlainBarcode) -> Exponent {
    let mut diffs = BTreeSet::new();
    diffs.insert(Rational::zero());
    for p in x.bars() {
        for q in y.bars() {
            for (u, v) in [(&p.birth, &q.birth), (&q.birth, &p.birth)] {
                diffs.insert((u - v).abs());
            }
            if let (Exponent::Finite(e), Exponent::Finite(f)) = (p.death(), q.death()) {
                diffs.insert((e - f).abs());
            }
        }
    }
    let lengths: Vec<Rational> = x.bars().iter().chain(y.bars()).filter_map(|p| p.length.finite().cloned()).collect();
    let mut best = Exponent::Infinite;
    for a in &diffs {
        let mut bs: BTreeSet<Rational> = diffs.clone();
        bs.extend(lengths.iter().map(|l| l - a).filter(|d| d.is_positive()));
        let bs: Vec<Rational> = bs.into_iter().collect();
        // feasibility is monotone in b
        let (mut lo, mut hi) = (0usize, bs.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if plain_feasible(x, y, a, &bs[mid]).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if let Some(b) = bs.get(lo) {
            best = core::cmp::min(best, Exponent::Finite(a + b));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn bar(s: i64, l: Option<i64>) -> PlainBar {
        PlainBar::new(rat(s, 1), l.map_or(Exponent::Infinite, Exponent::int))
    }

    #[test]
    fn shifts_and_deletions() {
        let x = PlainBarcode::new(alloc::vec![bar(0, None)]).unwrap();
        let y = PlainBarcode::new(alloc::vec![bar(3, None)]).unwrap();
        assert_eq!(plain_distance(&x, &y), Exponent::int(3));
        let z = PlainBarcode::new(alloc::vec![bar(1, Some(2))]).unwrap();
        assert_eq!(plain_distance(&z, &PlainBarcode::empty()), Exponent::int(2));
        assert_eq!(plain_distance(&x, &z), Exponent::Infinite);
        let w = PlainBarcode::new(alloc::vec![bar(0, Some(5))]).unwrap();
        let v = PlainBarcode::new(alloc::vec![bar(1, Some(3))]).unwrap();
        // a = 1 (death 5 vs 4), b = 1 (birth 1 vs 0)
        assert_eq!(plain_distance(&w, &v), Exponent::int(2));
    }
}
