//! Seeded random instances for the property suites and demos.
//!
//! Exponents live on a grid `k/denom`, coefficients are small integers, so
//! every instance is exact and cheap.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novsheaf_core::barcode::{EqBarcode, ModuleMap};
use novsheaf_core::curved::{sigma_decompose, TotalComplex, TwistedComplex};
use novsheaf_core::matrix::Matrix;
use novsheaf_core::metrics::{interleaving_distance, Interleaving, WeakInterleaving};
use novsheaf_core::novikov::{rat, Exponent, Field, NovikovScalar, Rational, Ring};
use novsheaf_core::persist1d::{Base, PLFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k/denom` with `0 ≤ k ≤ max·denom`.
pub fn grid(rng: &mut impl Rng, denom: i64, max: i64) -> Rational {
    rat(rng.gen_range(0..=max * denom), denom)
}

/// Positive grid point.
pub fn positive_grid(rng: &mut impl Rng, denom: i64, max: i64) -> Rational {
    rat(rng.gen_range(1..=max * denom), denom)
}

/// Up to `terms` monomials with coefficients in `−3..=3`.
pub fn scalar(rng: &mut impl Rng, ring: &Ring, terms: usize, denom: i64, max_exp: i64) -> NovikovScalar {
    let n = rng.gen_range(0..=terms);
    let monos: Vec<_> =
        (0..n).map(|_| (grid(rng, denom, max_exp), ring.field.from_i64(rng.gen_range(-3..=3)))).collect();
    NovikovScalar::from_terms(monos, ring).expect("nonnegative exponents")
}

/// Random element of `Λ₀⁺`: positive valuation, possibly zero.
pub fn small_scalar(rng: &mut impl Rng, ring: &Ring) -> NovikovScalar {
    loop {
        let b = scalar(rng, ring, 3, 6, 3);
        if b.valuation() > Exponent::zero() {
            return b;
        }
    }
}

/// Monomial `c·T^e` with `c ≠ 0` in the field.
pub fn monomial(rng: &mut impl Rng, ring: &Ring, denom: i64, max_exp: i64) -> NovikovScalar {
    loop {
        let c = ring.field.from_i64(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return NovikovScalar::monomial(c, grid(rng, denom, max_exp), ring);
        }
    }
}

/// Entries are zero with probability 1/3, otherwise random scalars.
pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize, ring: &Ring, denom: i64, max_exp: i64) -> Matrix {
    Matrix::from_fn(rows, cols, ring, |_, _| {
        if rng.gen_ratio(1, 3) {
            NovikovScalar::zero(ring)
        } else {
            scalar(rng, ring, 2, denom, max_exp)
        }
    })
}

/// Up to `max_summands` summands, each free with probability 1/5.
pub fn eq_barcode(rng: &mut impl Rng, cutoff: &Exponent, max_summands: usize, denom: i64, max_len: i64) -> EqBarcode {
    let n = rng.gen_range(0..=max_summands);
    let mut torsion = Vec::new();
    let mut free = 0;
    for _ in 0..n {
        if rng.gen_ratio(1, 5) {
            free += 1;
        } else {
            torsion.push(positive_grid(rng, denom, max_len));
        }
    }
    EqBarcode::new(torsion, free, cutoff.clone()).expect("positive lengths")
}

/// Move every torsion length by at most `delta`, keeping it positive.
pub fn perturb_barcode(rng: &mut impl Rng, e: &EqBarcode, delta: &Rational, denom: i64) -> EqBarcode {
    let steps = (delta * Rational::from_integer(denom.into())).floor().to_integer();
    let steps: i64 = steps.try_into().unwrap_or(0);
    let torsion = e
        .torsion()
        .iter()
        .map(|l| {
            let moved = l + rat(rng.gen_range(-steps..=steps), denom);
            if moved > rat(0, 1) {
                moved
            } else {
                l.clone()
            }
        })
        .collect();
    EqBarcode::new(torsion, e.free_rank(), e.cutoff().clone()).expect("positive lengths")
}

/// Weak `(a, b)`-isomorphism `(α, β, β, α)` built from the optimal
/// interleaving between `e` and a perturbation of it, with `a + b = ε`
/// split at a random grid point.
pub fn weak_interleaving(rng: &mut impl Rng, cutoff: &Exponent, field: Field) -> WeakInterleaving {
    loop {
        let e = eq_barcode(rng, cutoff, 4, 4, 4);
        let f = perturb_barcode(rng, &e, &rat(1, 1), 4);
        let Ok(report) = interleaving_distance(&e, &f, field) else { continue };
        let Some(Interleaving { epsilon, alpha, beta }) = report.witness else { continue };
        let k = (&epsilon * Rational::from_integer(8.into())).to_integer();
        let k: i64 = k.try_into().expect("small");
        let a = rat(rng.gen_range(0..=k), 8);
        let b = &epsilon - &a;
        return WeakInterleaving { a, b, gamma: beta.clone(), delta: alpha.clone(), alpha, beta };
    }
}

/// A `d_I`-Cauchy sequence `E_0, …, E_{n−1}` with geometric schedule
/// `ε_k = ε_0·r^k`, together with the schedule. Summand `i` has length
/// `ℓᵢ + sᵢ·δᵢ·r^k`; some `ℓᵢ` are zero, so those summands vanish in the
/// limit.
pub fn cauchy_sequence(rng: &mut impl Rng, n: usize) -> (Vec<EqBarcode>, Vec<Rational>) {
    let r = rat(1, rng.gen_range(2..=4));
    let eps0 = positive_grid(rng, 4, 2);
    let summands = rng.gen_range(1..=4);
    // |δ(r^k − r^{k+1})| = δ(1−r)r^k ≤ ε_k
    let delta_max = &eps0 / (rat(1, 1) - &r);
    let mut profiles = Vec::new();
    for _ in 0..summands {
        let base = if rng.gen_ratio(1, 4) { rat(0, 1) } else { positive_grid(rng, 4, 4) };
        let delta = &delta_max * rat(rng.gen_range(1..=4), 4);
        let sign = if base == rat(0, 1) || rng.gen_bool(0.5) { rat(1, 1) } else { rat(-1, 1) };
        let delta = if sign < rat(0, 1) && delta >= base { &base / rat(2, 1) } else { delta };
        profiles.push((base, &sign * &delta));
    }
    let mut seq = Vec::new();
    let mut power = rat(1, 1);
    for _ in 0..n {
        let torsion: Vec<Rational> = profiles.iter().map(|(l, d)| l + d * &power).collect();
        seq.push(EqBarcode::new(torsion, 0, Exponent::Infinite).expect("positive lengths"));
        power *= &r;
    }
    let mut eps = Vec::new();
    let mut e = eps0;
    for _ in 0..n - 1 {
        eps.push(e.clone());
        e *= &r;
    }
    (seq, eps)
}

/// Generic PL function on the circle with `n ≥ 2` equally spaced
/// breakpoints and pairwise distinct values on the grid `k/denom`.
pub fn pl_circle(rng: &mut impl Rng, n: usize, denom: i64, max: i64) -> PLFunction {
    let mut pool: Vec<i64> = (-max * denom..=max * denom).collect();
    pool.shuffle(rng);
    let pts = (0..n).map(|i| (rat(i as i64, n as i64), rat(pool[i], denom))).collect();
    PLFunction::new(Base::Circle, pts).expect("valid breakpoints")
}

/// PL function on the circle at random breakpoints (not necessarily
/// generic) with values in `[lo, hi]`.
pub fn pl_circle_any(rng: &mut impl Rng, n: usize, denom: i64, lo: &Rational, hi: &Rational) -> PLFunction {
    let mut xs: Vec<i64> = (0..4 * n as i64).collect();
    xs.shuffle(rng);
    let mut xs: Vec<i64> = xs.into_iter().take(n).collect();
    xs.sort();
    let span = ((hi - lo) * Rational::from_integer(denom.into())).floor().to_integer();
    let span: i64 = span.try_into().expect("small");
    let pts = xs.into_iter().map(|x| (rat(x, 4 * n as i64), lo + rat(rng.gen_range(0..=span), denom))).collect();
    PLFunction::new(Base::Circle, pts).expect("valid breakpoints")
}

/// Slot layout of a random total complex; degrees are total degrees.
struct Layout {
    levels: Vec<usize>,
    degrees: Vec<i32>,
    offsets: Vec<Rational>,
}

fn layout(rng: &mut impl Rng) -> Layout {
    let nlevels = rng.gen_range(1..=4);
    let (mut levels, mut degrees) = (Vec::new(), Vec::new());
    for l in 0..nlevels {
        for _ in 0..rng.gen_range(1..=3) {
            levels.push(l);
            degrees.push(rng.gen_range(0..=3));
        }
    }
    let mut offsets = Vec::new();
    let mut off = grid(rng, 2, 1);
    for _ in 0..nlevels {
        offsets.push(off.clone());
        off += positive_grid(rng, 2, 1);
    }
    Layout { levels, degrees, offsets }
}

/// A valid twisted complex: its total differential is `G·E·G⁻¹` with `E`
/// a square-zero pairing of slots and `G` unipotent, both one-sided, so
/// the conjugate is one-sided and squares to zero.
pub fn twisted_complex(rng: &mut impl Rng, ring: &Ring) -> TwistedComplex {
    let Layout { levels, degrees, offsets } = layout(rng);
    let n = levels.len();
    let mut e = Matrix::zeros(n, n, ring);
    let mut used = vec![false; n];
    for p in 0..n {
        for q in 0..n {
            if !used[p]
                && !used[q]
                && p != q
                && levels[p] <= levels[q]
                && degrees[p] == degrees[q] + 1
                && rng.gen_bool(0.6)
            {
                e.set(p, q, monomial(rng, ring, 2, 2));
                used[p] = true;
                used[q] = true;
            }
        }
    }
    let nil = Matrix::from_fn(n, n, ring, |p, q| {
        if levels[p] < levels[q] && degrees[p] == degrees[q] && rng.gen_bool(0.5) {
            scalar(rng, ring, 2, 2, 2)
        } else {
            NovikovScalar::zero(ring)
        }
    });
    let id = Matrix::identity(n, ring);
    let g = id.checked_add(&nil).expect("square");
    // G⁻¹ = Σ (−N)^k, and N^n = 0
    let mut inv = id.clone();
    let mut power = id;
    let neg = nil.neg();
    for _ in 1..n {
        power = power.checked_mul(&neg).expect("square");
        inv = inv.checked_add(&power).expect("square");
    }
    let d = g.checked_mul(&e).and_then(|x| x.checked_mul(&inv)).expect("square");
    sigma_decompose(&TotalComplex { differential: d, degrees, levels, offsets })
        .expect("conjugated pairing is a valid twisted complex")
}

/// A twisted complex whose maps may violate the Maurer–Cartan equation:
/// with probability 1/2 one connecting entry of a valid complex is
/// changed.
pub fn maybe_broken_twisted_complex(rng: &mut impl Rng, ring: &Ring) -> TwistedComplex {
    let t = twisted_complex(rng, ring);
    if rng.gen_bool(0.5) || t.objects().len() < 2 {
        return t;
    }
    let objs = t.objects();
    let mut candidates = Vec::new();
    for i in 0..objs.len() {
        for j in 0..i {
            let shift = (i - j) as i32 + 1;
            for (q, dq) in objs[i].degrees().iter().enumerate() {
                for (p, dp) in objs[j].degrees().iter().enumerate() {
                    if *dp == dq + shift {
                        candidates.push((i, j, p, q));
                    }
                }
            }
        }
    }
    let Some(&(i, j, p, q)) = candidates.choose(rng) else { return t };
    let mut maps: BTreeMap<(usize, usize), Matrix> = t.maps().clone();
    let mut f = t.map(i, j);
    f.set(p, q, f.get(p, q) + &monomial(rng, ring, 2, 2));
    maps.insert((i, j), f);
    TwistedComplex::new(objs.to_vec(), maps, ring.clone()).expect("shape and degrees preserved")
}

/// `T^a·id` on a random module, for cone torsion checks.
pub fn t_power_map(rng: &mut impl Rng, cutoff: &Exponent, field: Field) -> (ModuleMap, Rational) {
    let e = eq_barcode(rng, cutoff, 4, 6, 4);
    let a = grid(rng, 6, 3);
    (ModuleMap::t_identity(&e, &a, field), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use novsheaf_core::curved::{tc_residual, tc_totalize};

    #[test]
    fn twisted_complexes_are_valid() {
        let mut r = rng(7);
        let ring = Ring::exact(Field::Rational);
        for _ in 0..30 {
            let t = twisted_complex(&mut r, &ring);
            assert!(tc_totalize(&t).squares_to_zero());
            assert!(tc_residual(&t).values().all(Matrix::is_zero));
        }
    }

    #[test]
    fn circle_functions_are_generic() {
        let mut r = rng(3);
        for n in 2..=8 {
            assert!(pl_circle(&mut r, n, 4, 3).is_generic());
        }
    }

    #[test]
    fn weak_interleavings_are_valid() {
        let mut r = rng(11);
        for _ in 0..20 {
            assert!(weak_interleaving(&mut r, &Exponent::Infinite, Field::Rational).is_valid());
        }
    }

    #[test]
    fn cauchy_steps_respect_schedule() {
        let mut r = rng(5);
        for _ in 0..10 {
            let (seq, eps) = cauchy_sequence(&mut r, 5);
            for k in 0..eps.len() {
                let d = interleaving_distance(&seq[k], &seq[k + 1], Field::Rational).unwrap();
                assert!(!d.upper.exceeds(&eps[k]));
            }
        }
    }
}
