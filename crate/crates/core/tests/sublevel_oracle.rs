//! Sublevel barcodes against component counts of `{h ≤ c}` computed directly
//! from the arcs of a PL function.

use novsheaf_core::barcode::PlainBarcode;
use novsheaf_core::novikov::{rat, Rational};
use novsheaf_core::persist1d::{sublevel_persistence, Base, PLFunction};
use proptest::prelude::*;

/// Pieces of `{h ≤ c}`: vertex `i` and segment `n + s`, with the adjacency
/// between a segment and its endpoints when both pieces are present.
fn components(h: &PLFunction, c: &Rational) -> (Vec<Option<usize>>, bool) {
    let v = h.values();
    let n = v.len();
    let segs: Vec<(usize, usize)> = match h.base() {
        Base::Point => vec![],
        Base::Interval(..) => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Base::Circle if n == 1 => vec![(0, 0)],
        Base::Circle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    let mut present: Vec<bool> = v.iter().map(|x| x <= c).collect();
    present.extend(segs.iter().map(|&(a, b)| core::cmp::min(&v[a], &v[b]) <= c));
    let mut label = vec![None; present.len()];
    let mut next = 0;
    for start in 0..present.len() {
        if !present[start] || label[start].is_some() {
            continue;
        }
        let mut stack = vec![start];
        label[start] = Some(next);
        while let Some(p) = stack.pop() {
            let mut nbrs = vec![];
            if p >= n {
                let (a, b) = segs[p - n];
                nbrs.extend([a, b]);
            } else {
                nbrs.extend(segs.iter().enumerate().filter(|(_, &(a, b))| a == p || b == p).map(|(s, _)| n + s));
            }
            for q in nbrs {
                if present[q] && label[q].is_none() {
                    label[q] = Some(next);
                    stack.push(q);
                }
            }
        }
        next += 1;
    }
    let whole_circle = matches!(h.base(), Base::Circle) && present.iter().all(|&p| p);
    (label, whole_circle)
}

fn count(labels: &[Option<usize>]) -> usize {
    labels.iter().flatten().max().map_or(0, |m| m + 1)
}

/// Components of `{h ≤ c2}` that meet `{h ≤ c1}`.
fn inclusion_rank(h: &PLFunction, c1: &Rational, c2: &Rational) -> usize {
    let (small, _) = components(h, c1);
    let (big, _) = components(h, c2);
    let mut hit: Vec<usize> = small.iter().zip(&big).filter(|(s, _)| s.is_some()).filter_map(|(_, b)| *b).collect();
    hit.sort();
    hit.dedup();
    hit.len()
}

fn bars_alive(b: &PlainBarcode, degree: i32, c1: &Rational, c2: &Rational) -> usize {
    b.in_degree(degree).filter(|bar| &bar.birth <= c1 && bar.death().exceeds(c2)).count()
}

fn levels(h: &PLFunction) -> Vec<Rational> {
    let mut vals: Vec<Rational> = h.values().to_vec();
    vals.sort();
    vals.dedup();
    let mut out = vec![&vals[0] - rat(1, 1)];
    for w in vals.windows(2) {
        out.push((&w[0] + &w[1]) / rat(2, 1));
    }
    out.extend(vals.iter().cloned());
    out.push(&vals[vals.len() - 1] + rat(1, 1));
    out.sort();
    out
}

fn check(h: &PLFunction) -> Result<(), TestCaseError> {
    let bars = sublevel_persistence(h);
    let ls = levels(h);
    for (i, c1) in ls.iter().enumerate() {
        let (labels, whole) = components(h, c1);
        prop_assert_eq!(bars_alive(&bars, 0, c1, c1), count(&labels), "b0 at {}", c1);
        prop_assert_eq!(bars_alive(&bars, 1, c1, c1), whole as usize, "b1 at {}", c1);
        for c2 in &ls[i..] {
            prop_assert_eq!(bars_alive(&bars, 0, c1, c2), inclusion_rank(h, c1, c2), "rank {} -> {}", c1, c2);
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn circle(values in prop::collection::vec(-6i64..=6, 1..=9)) {
        let n = values.len() as i64;
        let pts = values.iter().enumerate().map(|(i, &v)| (rat(i as i64, n), rat(v, 2))).collect();
        check(&PLFunction::new(Base::Circle, pts).unwrap())?;
    }

    #[test]
    fn interval(values in prop::collection::vec(-6i64..=6, 2..=9)) {
        let n = values.len() as i64 - 1;
        let pts = values.iter().enumerate().map(|(i, &v)| (rat(i as i64, n), rat(v, 3))).collect();
        check(&PLFunction::new(Base::Interval(rat(0, 1), rat(1, 1)), pts).unwrap())?;
    }
}

#[test]
fn point() {
    let h = PLFunction::constant(Base::Point, rat(3, 2));
    check(&h).unwrap();
}
