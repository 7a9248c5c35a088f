//! Interleaving and Hofer distances between equivariant barcodes, weak
//! interleavings, completeness and limit lifts.

mod limits;
mod matching;
mod plain;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::barcode::{cone, BarcodeError, EqBarcode, GradedEqBarcode, ModuleMap};
use crate::matrix::Matrix;
use crate::novikov::{Exponent, Field, NovikovScalar, Rational};

pub use limits::{cauchy_limit, limit_lift, CauchyLimit};
pub use matching::augmented_perfect_matching;
pub use plain::{plain_distance, plain_feasible};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricsError {
    Barcode(BarcodeError),
    InvalidInterleaving,
    InvalidWeak,
    TorsionBound { measured: Exponent, bound: Rational },
    EmptySequence,
    LengthMismatch,
    InvalidWitness(usize),
    NoMatching(usize),
    DivergentSchedule,
    Incompatible(usize),
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::Barcode(e) => write!(f, "{}", e),
            MetricsError::InvalidInterleaving => f.write_str("composites are not T^ε·id"),
            MetricsError::InvalidWeak => f.write_str("weak interleaving identities fail"),
            MetricsError::TorsionBound { measured, bound } => {
                write!(f, "cone torsion order {} exceeds {}", measured, bound)
            }
            MetricsError::EmptySequence => f.write_str("empty sequence"),
            MetricsError::LengthMismatch => f.write_str("sequence, schedule and witness lengths disagree"),
            MetricsError::InvalidWitness(k) => write!(f, "witness {} is not a valid interleaving", k),
            MetricsError::NoMatching(k) => write!(f, "no summand matching for step {}", k),
            MetricsError::DivergentSchedule => f.write_str("ε schedule must be nonnegative"),
            MetricsError::Incompatible(j) => write!(f, "map {} is not compatible with the system", j),
        }
    }
}

impl core::error::Error for MetricsError {}

impl From<BarcodeError> for MetricsError {
    fn from(e: BarcodeError) -> Self {
        MetricsError::Barcode(e)
    }
}

/// `βα = T^ε·id_E` and `αβ = T^ε·id_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interleaving {
    pub epsilon: Rational,
    pub alpha: ModuleMap,
    pub beta: ModuleMap,
}

/// Weak `(a, b)`-isomorphism data: `βα = T^{a+b}`, `δγ = T^{a+b}`,
/// `T^a α = T^a δ` and `T^b β = T^b γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakInterleaving {
    pub a: Rational,
    pub b: Rational,
    pub alpha: ModuleMap,
    pub beta: ModuleMap,
    pub gamma: ModuleMap,
    pub delta: ModuleMap,
}

impl WeakInterleaving {
    pub fn is_valid(&self) -> bool {
        let (e, f) = (self.alpha.source(), self.alpha.target());
        let shapes = self.delta.source() == e
            && self.delta.target() == f
            && self.beta.source() == f
            && self.beta.target() == e
            && self.gamma.source() == f
            && self.gamma.target() == e
            && [&self.alpha, &self.beta, &self.gamma, &self.delta].iter().all(|m| m.degree() == 0);
        if !shapes || self.a.is_negative() || self.b.is_negative() {
            return false;
        }
        let ab = &self.a + &self.b;
        let composite = |outer: &ModuleMap, inner: &ModuleMap| {
            ModuleMap::compose(outer, inner).map(|m| m.is_t_identity(&ab)).unwrap_or(false)
        };
        composite(&self.beta, &self.alpha)
            && composite(&self.delta, &self.gamma)
            && self.alpha.shift(&self.a) == self.delta.shift(&self.a)
            && self.beta.shift(&self.b) == self.gamma.shift(&self.b)
    }
}

/// Bracketed interleaving distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub lower: Exponent,
    pub upper: Exponent,
    pub exact: bool,
    pub witness: Option<Interleaving>,
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_I lower={} upper={} exact={}", self.lower, self.upper, self.exact)
    }
}

pub fn check_c_isomorphism(e: &EqBarcode, f: &EqBarcode, cand: &Interleaving) -> bool {
    let i = cand;
    if i.alpha.source() != e || i.alpha.target() != f || i.beta.source() != f || i.beta.target() != e {
        return false;
    }
    if i.alpha.degree() != 0 || i.beta.degree() != 0 || i.epsilon.is_negative() {
        return false;
    }
    let holds = |outer: &ModuleMap, inner: &ModuleMap| {
        ModuleMap::compose(outer, inner).map(|m| m.is_t_identity(&i.epsilon)).unwrap_or(false)
    };
    holds(&i.beta, &i.alpha) && holds(&i.alpha, &i.beta)
}

/// `α' = T^a α`, `β' = T^b β`: then `β'α' = T^{a+b}βα = T^{2(a+b)}` and
/// `T^{a+b}αβ = (T^a δ)(T^b γ) = T^{a+b}δγ = T^{2(a+b)}`.
pub fn weak_to_strong(w: &WeakInterleaving) -> Result<Interleaving, MetricsError> {
    if !w.is_valid() {
        return Err(MetricsError::InvalidWeak);
    }
    let out = Interleaving {
        epsilon: (&w.a + &w.b) * Rational::from_integer(2.into()),
        alpha: w.alpha.shift(&w.a),
        beta: w.beta.shift(&w.b),
    };
    debug_assert!(check_c_isomorphism(w.alpha.source(), w.alpha.target(), &out));
    Ok(out)
}

/// Measured torsion order of `cone(α)`, checked against `3ε`.
pub fn cone_torsion_of_interleaving(i: &Interleaving) -> Result<Exponent, MetricsError> {
    if !check_c_isomorphism(i.alpha.source(), i.alpha.target(), i) {
        return Err(MetricsError::InvalidInterleaving);
    }
    let measured = cone(&i.alpha).torsion_order();
    let bound = &i.epsilon * Rational::from_integer(3.into());
    if measured.cmp_rational(&bound) == core::cmp::Ordering::Greater {
        return Err(MetricsError::TorsionBound { measured, bound });
    }
    Ok(measured)
}

fn close(a: &Exponent, b: &Exponent, eps: &Rational) -> bool {
    match (a, b) {
        (Exponent::Infinite, Exponent::Infinite) => true,
        (Exponent::Finite(a), Exponent::Finite(b)) => &(a - b).abs() <= eps,
        _ => false,
    }
}

fn deletable(a: &Exponent, eps: &Rational) -> bool {
    matches!(a, Exponent::Finite(a) if a <= eps)
}

/// Summand matching at `ε`: partner index per source summand, `None` for
/// deleted ones.
pub fn summand_matching(e: &EqBarcode, f: &EqBarcode, eps: &Rational) -> Option<Vec<Option<usize>>> {
    let (el, fl) = (e.effective_lengths(), f.effective_lengths());
    augmented_perfect_matching(
        el.len(),
        fl.len(),
        |i, j| close(&el[i], &fl[j], eps),
        |i| deletable(&el[i], eps),
        |j| deletable(&fl[j], eps),
    )
}

/// Diagonal monomial witness for a matching: `α = T^{max(0, b−a)}`,
/// `β = T^{ε − max(0, b−a)}` on matched pairs, zero elsewhere.
pub fn matching_witness(
    e: &EqBarcode,
    f: &EqBarcode,
    eps: &Rational,
    partner: &[Option<usize>],
    field: Field,
) -> Result<Interleaving, MetricsError> {
    let ring = e.ring(field);
    let (el, fl) = (e.effective_lengths(), f.effective_lengths());
    let mut alpha = Matrix::zeros(el.len(), fl.len(), &ring);
    let mut beta = Matrix::zeros(fl.len(), el.len(), &ring);
    for (i, p) in partner.iter().enumerate() {
        if let Some(j) = *p {
            let up = match (&el[i], &fl[j]) {
                (Exponent::Finite(a), Exponent::Finite(b)) if b > a => b - a,
                _ => Rational::zero(),
            };
            beta.set(j, i, NovikovScalar::t_pow(&(eps - &up), &ring));
            alpha.set(i, j, NovikovScalar::t_pow(&up, &ring));
        }
    }
    let alpha = ModuleMap::new(e.clone(), f.clone(), alpha)?;
    let beta = ModuleMap::new(f.clone(), e.clone(), beta)?;
    Ok(Interleaving { epsilon: eps.clone(), alpha, beta })
}

fn finite_lengths(e: &EqBarcode) -> Vec<Rational> {
    e.effective_lengths().into_iter().filter_map(|l| l.finite().cloned()).collect()
}

/// `{0} ∪ {|a−b|} ∪ {a} ∪ {b}` over finite summand lengths, ascending.
fn candidate_grid(e: &EqBarcode, f: &EqBarcode) -> Vec<Rational> {
    let (el, fl) = (finite_lengths(e), finite_lengths(f));
    let mut grid = BTreeSet::new();
    grid.insert(Rational::zero());
    for a in el.iter().chain(&fl) {
        grid.insert(a.clone());
    }
    for a in &el {
        for b in &fl {
            grid.insert((a - b).abs());
        }
    }
    grid.into_iter().collect()
}

/// `#{ℓ > t}` over effective lengths.
fn count_above(lengths: &[Exponent], t: &Rational) -> usize {
    lengths.iter().filter(|l| l.exceeds(t)).count()
}

/// `N_E(t+ε) ≤ N_F(t)` for every `t ≥ 0`; `N_F` only drops at its lengths,
/// so checking `t ∈ {0} ∪ lengths(F)` suffices.
fn rank_condition(e: &EqBarcode, f: &EqBarcode, eps: &Rational) -> bool {
    let (el, fl) = (e.effective_lengths(), f.effective_lengths());
    core::iter::once(Rational::zero())
        .chain(finite_lengths(f))
        .all(|t| count_above(&el, &(&t + eps)) <= count_above(&fl, &t))
}

/// Certified lower bound from rank functions. The admissible set is closed
/// upwards and its infimum lies on the candidate grid.
pub fn rank_lower_bound(e: &EqBarcode, f: &EqBarcode) -> Exponent {
    candidate_grid(e, f)
        .into_iter()
        .find(|eps| rank_condition(e, f, eps) && rank_condition(f, e, eps))
        .map_or(Exponent::Infinite, Exponent::Finite)
}

fn beyond_cutoff(x: Exponent, cutoff: &Exponent) -> Exponent {
    match &x {
        Exponent::Finite(q) if !cutoff.exceeds(q) => Exponent::Infinite,
        _ => x,
    }
}

/// Matching upper bound with witness, rank-function lower bound.
pub fn interleaving_distance(e: &EqBarcode, f: &EqBarcode, field: Field) -> Result<DistanceReport, MetricsError> {
    if e.cutoff() != f.cutoff() {
        return Err(BarcodeError::CutoffMismatch(e.cutoff().clone(), f.cutoff().clone()).into());
    }
    let grid = candidate_grid(e, f);
    // feasibility is monotone in ε
    let (mut lo, mut hi) = (0usize, grid.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if summand_matching(e, f, &grid[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (upper, witness) = match grid.get(lo) {
        Some(eps) if e.cutoff().exceeds(eps) => {
            let partner = summand_matching(e, f, eps).expect("feasible at the search result");
            let w = matching_witness(e, f, eps, &partner, field)?;
            debug_assert!(check_c_isomorphism(e, f, &w));
            (Exponent::Finite(eps.clone()), Some(w))
        }
        _ => (Exponent::Infinite, None),
    };
    let lower = beyond_cutoff(rank_lower_bound(e, f), e.cutoff());
    debug_assert!(lower <= upper);
    Ok(DistanceReport { exact: lower == upper, lower, upper, witness })
}

/// Degreewise maximum; a degree missing on one side is the zero object.
pub fn graded_interleaving_distance(
    e: &GradedEqBarcode,
    f: &GradedEqBarcode,
    cutoff: &Exponent,
    field: Field,
) -> Result<DistanceReport, MetricsError> {
    let degrees: BTreeSet<i32> = e.keys().chain(f.keys()).copied().collect();
    let zero = EqBarcode::zero(cutoff.clone());
    let mut lower = Exponent::zero();
    let mut upper = Exponent::zero();
    for d in degrees {
        let r = interleaving_distance(e.get(&d).unwrap_or(&zero), f.get(&d).unwrap_or(&zero), field)?;
        lower = core::cmp::max(lower, r.lower);
        upper = core::cmp::max(upper, r.upper);
    }
    Ok(DistanceReport { exact: lower == upper, lower, upper, witness: None })
}

/// Over `Λ` torsion vanishes and free summands carry no relative filtration
/// shift, so only the free ranks matter.
pub fn hofer_distance(e: &EqBarcode, f: &EqBarcode) -> Exponent {
    if e.free_rank() == f.free_rank() {
        Exponent::zero()
    } else {
        Exponent::Infinite
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn eq(t: &[i64], free: usize) -> EqBarcode {
        EqBarcode::new(t.iter().map(|&a| rat(a, 1)).collect(), free, Exponent::Infinite).unwrap()
    }

    #[test]
    fn anchors() {
        let r = interleaving_distance(&eq(&[2], 0), &eq(&[5], 0), Field::Rational).unwrap();
        assert_eq!(alloc::format!("{}", r), "d_I lower=3 upper=3 exact=true");
        let w = r.witness.unwrap();
        assert_eq!(cone_torsion_of_interleaving(&w).unwrap(), Exponent::int(3));
        let r = interleaving_distance(&eq(&[4], 0), &eq(&[], 0), Field::Rational).unwrap();
        assert_eq!((r.lower, r.upper), (Exponent::int(4), Exponent::int(4)));
        let r = interleaving_distance(&eq(&[], 1), &eq(&[4], 0), Field::Rational).unwrap();
        assert_eq!((r.lower, r.upper, r.witness), (Exponent::Infinite, Exponent::Infinite, None));
        assert_eq!(hofer_distance(&eq(&[5], 1), &eq(&[], 1)), Exponent::zero());
        assert_eq!(hofer_distance(&eq(&[], 1), &eq(&[], 2)), Exponent::Infinite);
    }

    #[test]
    fn too_small_epsilon_fails() {
        let (e, f) = (eq(&[2], 0), eq(&[5], 0));
        let partner = [Some(0)];
        let w = matching_witness(&e, &f, &rat(3, 1), &partner, Field::Rational).unwrap();
        assert!(check_c_isomorphism(&e, &f, &w));
        let bad = Interleaving { epsilon: rat(2, 1), ..w };
        assert!(!check_c_isomorphism(&e, &f, &bad));
    }

    #[test]
    fn weak_conversion() {
        let e = eq(&[4], 0);
        let id = ModuleMap::identity(&e, Field::Rational);
        let t1 = ModuleMap::t_identity(&e, &rat(1, 1), Field::Rational);
        let w =
            WeakInterleaving { a: rat(1, 1), b: rat(0, 1), alpha: t1.clone(), beta: id.clone(), gamma: id, delta: t1 };
        let s = weak_to_strong(&w).unwrap();
        assert_eq!(s.epsilon, rat(2, 1));
        assert!(check_c_isomorphism(&e, &e, &s));
    }
}
