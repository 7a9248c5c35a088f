//! Interleaving distance against a brute-force bottleneck over all partial
//! matchings: matched summands cost `|a − b|`, an unmatched torsion summand
//! costs its length, and free summands must pair with free summands.

use novsheaf_core::barcode::EqBarcode;
use novsheaf_core::metrics::{hofer_distance, interleaving_distance, rank_lower_bound};
use novsheaf_core::novikov::{rat, Exponent, Field, Rational};
use proptest::prelude::*;

fn cost(a: &Rational, b: &Rational) -> Rational {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// Least bottleneck cost matching `xs` into `ys`, each side allowed to be deleted.
fn bottleneck(xs: &[Rational], ys: &[Rational], used: &mut Vec<bool>) -> Rational {
    match xs.split_first() {
        None => {
            ys.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(y, _)| y.clone()).max().unwrap_or_else(|| rat(0, 1))
        }
        Some((x, rest)) => {
            let mut best = core::cmp::max(x.clone(), bottleneck(rest, ys, used));
            for j in 0..ys.len() {
                if !used[j] {
                    used[j] = true;
                    let c = core::cmp::max(cost(x, &ys[j]), bottleneck(rest, ys, used));
                    used[j] = false;
                    best = best.min(c);
                }
            }
            best
        }
    }
}

/// At a finite cutoff `c` a free summand is `Λ₀/T^c`, and every distance
/// from `c` on is reported as infinite since zero maps then interleave.
fn oracle(e: &EqBarcode, f: &EqBarcode) -> Exponent {
    let c = match e.cutoff() {
        Exponent::Infinite if e.free_rank() != f.free_rank() => return Exponent::Infinite,
        Exponent::Infinite => None,
        Exponent::Finite(c) => Some(c.clone()),
    };
    let lengths = |b: &EqBarcode| {
        let mut l = b.torsion().to_vec();
        if let Some(c) = &c {
            l.extend(std::iter::repeat_n(c.clone(), b.free_rank()));
        }
        l
    };
    let (el, fl) = (lengths(e), lengths(f));
    let d = bottleneck(&el, &fl, &mut vec![false; fl.len()]);
    match c {
        Some(c) if d >= c => Exponent::Infinite,
        _ => Exponent::Finite(d),
    }
}

fn barcode_at(cutoff: Exponent) -> impl Strategy<Value = EqBarcode> {
    (prop::collection::vec(1i64..=16, 0..=3), 0usize..=1).prop_map(move |(t, free)| {
        EqBarcode::new(t.into_iter().map(|k| rat(k, 4)).collect(), free, cutoff.clone()).unwrap()
    })
}

fn barcode() -> impl Strategy<Value = EqBarcode> {
    barcode_at(Exponent::Infinite)
}

fn pair_at_cutoff() -> impl Strategy<Value = (EqBarcode, EqBarcode)> {
    (4i64..=16).prop_flat_map(|c| (barcode_at(Exponent::ratio(c, 4)), barcode_at(Exponent::ratio(c, 4))))
}

proptest! {
    #[test]
    fn matches_bottleneck(e in barcode(), f in barcode()) {
        let r = interleaving_distance(&e, &f, Field::Rational).unwrap();
        let expected = oracle(&e, &f);
        prop_assert_eq!(&r.upper, &expected);
        prop_assert!(r.lower <= r.upper);
        prop_assert!(rank_lower_bound(&e, &f) <= r.upper);
        prop_assert!(hofer_distance(&e, &f) <= r.upper);
        if let Some(w) = r.witness {
            prop_assert_eq!(Exponent::Finite(w.epsilon), expected);
        }
    }

    #[test]
    fn matches_bottleneck_at_finite_cutoff((e, f) in pair_at_cutoff()) {
        let r = interleaving_distance(&e, &f, Field::Rational).unwrap();
        prop_assert_eq!(&r.upper, &oracle(&e, &f));
        prop_assert!(r.lower <= r.upper);
    }

    #[test]
    fn identity_and_symmetry(e in barcode(), f in barcode()) {
        prop_assert_eq!(interleaving_distance(&e, &e, Field::Rational).unwrap().upper, Exponent::zero());
        let ef = interleaving_distance(&e, &f, Field::Rational).unwrap();
        let fe = interleaving_distance(&f, &e, Field::Rational).unwrap();
        prop_assert_eq!(ef.upper, fe.upper);
        prop_assert_eq!(ef.lower, fe.lower);
    }

    #[test]
    fn direct_sum_does_not_increase(e in barcode(), f in barcode(), g in barcode()) {
        let d = interleaving_distance(&e, &f, Field::Rational).unwrap().upper;
        let ds = interleaving_distance(&e.direct_sum(&g).unwrap(), &f.direct_sum(&g).unwrap(), Field::Rational).unwrap().upper;
        prop_assert!(ds <= d);
    }
}
