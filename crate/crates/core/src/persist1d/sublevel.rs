use alloc::vec::Vec;

use super::pl::{Base, PLFunction};
use crate::barcode::{PlainBar, PlainBarcode};
use crate::novikov::Exponent;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Barcode of the filtration `{h ≤ c}`.
///
/// Lower-star filtration of the breakpoint graph, with ties broken by
/// vertex index, which amounts to an infinitesimal perturbation. Zero-length
/// bars are dropped. When two components meet, the one born later dies.
/// On the circle the edge closing the loop starts a degree-1 ray at the
/// global maximum.
pub fn sublevel_persistence(h: &PLFunction) -> PlainBarcode {
    let vals = h.values();
    if *h.base() == Base::Point {
        return PlainBarcode::new(alloc::vec![PlainBar::new(vals[0].clone(), Exponent::Infinite)]).expect("ray");
    }
    let n = h.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].cmp(&vals[b]).then(a.cmp(&b)));
    let mut rank = alloc::vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    // each edge enters with its later endpoint
    let mut entering: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
    for (a, b) in h.edges() {
        let later = if rank[a] >= rank[b] { a } else { b };
        entering[later].push((a, b));
    }
    let mut uf = UnionFind { parent: (0..n).collect() };
    let mut bars = Vec::new();
    for &v in &order {
        for &(a, b) in &entering[v] {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                bars.push(PlainBar::new(vals[v].clone(), Exponent::Infinite).in_degree(1));
                continue;
            }
            // roots are the earliest vertices of their components
            let (elder, younger) = if rank[ra] < rank[rb] { (ra, rb) } else { (rb, ra) };
            let length = &vals[v] - &vals[younger];
            if !num_traits::Zero::is_zero(&length) {
                bars.push(PlainBar::new(vals[younger].clone(), Exponent::Finite(length)));
            }
            uf.parent[younger] = elder;
        }
    }
    for v in 0..n {
        if uf.find(v) == v {
            bars.push(PlainBar::new(vals[v].clone(), Exponent::Infinite));
        }
    }
    PlainBarcode::new(bars).expect("positive lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, Rational};

    #[test]
    fn quarter_points() {
        let pts = [(0, 1), (1, 1), (1, 5), (3, 2)]
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| (rat(i as i64, 4), rat(p, q)))
            .collect();
        let h = PLFunction::new(Base::Circle, pts).unwrap();
        let expected = PlainBarcode::new(alloc::vec![
            PlainBar::new(rat(0, 1), Exponent::Infinite),
            PlainBar::new(rat(1, 5), Exponent::ratio(4, 5)),
            PlainBar::new(rat(3, 2), Exponent::Infinite).in_degree(1),
        ])
        .unwrap();
        assert_eq!(sublevel_persistence(&h), expected);
    }

    #[test]
    fn interval_cases() {
        let iv = Base::Interval(rat(0, 1), rat(2, 1));
        let c = PLFunction::constant(iv.clone(), rat(3, 1));
        let ray = |v: Rational| PlainBarcode::new(alloc::vec![PlainBar::new(v, Exponent::Infinite)]).unwrap();
        assert_eq!(sublevel_persistence(&c), ray(rat(3, 1)));
        let mono =
            PLFunction::new(iv, alloc::vec![(rat(0, 1), rat(5, 1)), (rat(1, 1), rat(2, 1)), (rat(2, 1), rat(-1, 1))])
                .unwrap();
        assert_eq!(sublevel_persistence(&mono), ray(rat(-1, 1)));
        let pt = PLFunction::constant(Base::Point, rat(7, 3));
        assert_eq!(sublevel_persistence(&pt), ray(rat(7, 3)));
    }

    #[test]
    fn constant_circle() {
        let c = PLFunction::constant(Base::Circle, rat(0, 1));
        let bars = sublevel_persistence(&c);
        assert_eq!(bars.bars().len(), 2);
        assert!(bars.bars().iter().all(|b| b.birth == rat(0, 1) && b.length.is_infinite()));
    }
}
