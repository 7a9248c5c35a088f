//! Limits of `d_I`-Cauchy sequences and lifts of compatible morphism systems.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{check_c_isomorphism, interleaving_distance, summand_matching, Interleaving, MetricsError};
use crate::barcode::{EqBarcode, ModuleMap};
use crate::matrix::Matrix;
use crate::novikov::{Exponent, Field, Rational};

/// The limit object together with its tail certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyLimit {
    pub limit: EqBarcode,
    /// `Σ_{k ≥ n} ε_k` per term; for a geometric schedule the sum runs over
    /// the whole infinite continuation.
    pub tails: Vec<Rational>,
    /// Reported `d_I(limit, seq_n)` upper bounds.
    pub distances: Vec<Exponent>,
}

impl CauchyLimit {
    pub fn certified(&self) -> bool {
        self.distances.iter().zip(&self.tails).all(|(d, t)| d.cmp_rational(t) != core::cmp::Ordering::Greater)
    }
}

/// Common ratio `r < 1` if `eps` is geometric with at least two terms.
fn geometric_ratio(eps: &[Rational]) -> Option<Rational> {
    if eps.len() < 2 || eps[0].is_zero() {
        return None;
    }
    let r = &eps[1] / &eps[0];
    let ok = r < Rational::one() && eps.windows(2).all(|w| w[1] == &w[0] * &r);
    ok.then_some(r)
}

/// A matched chain of summand lengths ending in the last term.
struct Chain {
    lengths: Vec<Exponent>,
}

/// Limit of `seq` given `ε`-interleavings between consecutive terms.
///
/// Summands are followed through the matchings at each `ε_k` into chains.
/// A chain alive at the last term converges to `ℓ_N` for a non-geometric
/// (finite) schedule; for a geometric schedule with ratio `r` the remaining
/// drift is extrapolated as `ℓ_N + (ℓ_N − ℓ_{N−1})·r/(1−r)`, which is exact
/// for geometric sequences and within `Σ_{k≥N} ε_k` of `ℓ_N` always.
/// Limits `≤ 0` vanish.
pub fn cauchy_limit(
    seq: &[EqBarcode],
    eps: &[Rational],
    witnesses: &[Interleaving],
    field: Field,
) -> Result<CauchyLimit, MetricsError> {
    let n = seq.len();
    if n == 0 {
        return Err(MetricsError::EmptySequence);
    }
    if eps.len() + 1 != n || witnesses.len() + 1 != n {
        return Err(MetricsError::LengthMismatch);
    }
    if eps.iter().any(|e| e.is_negative()) {
        return Err(MetricsError::DivergentSchedule);
    }
    for (k, w) in witnesses.iter().enumerate() {
        if w.epsilon > eps[k] || !check_c_isomorphism(&seq[k], &seq[k + 1], w) {
            return Err(MetricsError::InvalidWitness(k));
        }
    }

    // chains[i] follows summand i of the current term
    let mut alive: Vec<Chain> = seq[0].lengths().into_iter().map(|l| Chain { lengths: vec![l] }).collect();
    for k in 0..n - 1 {
        let partner = summand_matching(&seq[k], &seq[k + 1], &eps[k]).ok_or(MetricsError::NoMatching(k))?;
        let next_lengths = seq[k + 1].lengths();
        let mut next: Vec<Option<Chain>> = (0..next_lengths.len()).map(|_| None).collect();
        for (chain, p) in alive.into_iter().zip(partner) {
            if let Some(j) = p {
                let mut c = chain;
                c.lengths.push(next_lengths[j].clone());
                next[j] = Some(c);
            }
        }
        alive =
            next.into_iter().zip(next_lengths).map(|(c, l)| c.unwrap_or_else(|| Chain { lengths: vec![l] })).collect();
    }

    let ratio = geometric_ratio(eps);
    let mut torsion = Vec::new();
    let mut free = 0;
    for chain in &alive {
        let last = chain.lengths.last().expect("chains are nonempty");
        let l = match last {
            Exponent::Infinite => {
                free += 1;
                continue;
            }
            Exponent::Finite(l) => l.clone(),
        };
        let drift = match (&ratio, chain.lengths.len()) {
            (Some(r), m) if m >= 2 => match &chain.lengths[m - 2] {
                Exponent::Finite(prev) => (&l - prev) * r / (Rational::one() - r),
                Exponent::Infinite => Rational::zero(),
            },
            _ => Rational::zero(),
        };
        let limit = &l + &drift;
        if limit.is_positive() {
            torsion.push(limit);
        }
    }
    let limit = EqBarcode::new(torsion, free, seq[0].cutoff().clone())?;

    let mut tails = vec![Rational::zero(); n];
    let mut acc = match &ratio {
        Some(r) => &eps[n - 2] * r / (Rational::one() - r),
        None => Rational::zero(),
    };
    for k in (0..n).rev() {
        tails[k] = acc.clone();
        if k > 0 {
            acc += &eps[k - 1];
        }
    }
    let distances =
        seq.iter().map(|s| interleaving_distance(&limit, s, field).map(|r| r.upper)).collect::<Result<Vec<_>, _>>()?;
    Ok(CauchyLimit { limit, tails, distances })
}

/// Lift `α̃` with `T^{θ_j}·α̃ = α_j` for every `j`, from a system with
/// `α_j = T^{θ_j − θ_{j'}}·α_{j'}` for `j' > j`.
///
/// The representative is the entrywise division of the member with the
/// smallest `θ`; compatibility is then checked against every member.
pub fn limit_lift(alphas: &[ModuleMap], thetas: &[Rational]) -> Result<ModuleMap, MetricsError> {
    if alphas.is_empty() {
        return Err(MetricsError::EmptySequence);
    }
    if alphas.len() != thetas.len() {
        return Err(MetricsError::LengthMismatch);
    }
    let first = &alphas[0];
    for (j, (a, t)) in alphas.iter().zip(thetas).enumerate() {
        if t.is_negative()
            || a.source() != first.source()
            || a.target() != first.target()
            || a.degree() != first.degree()
        {
            return Err(MetricsError::Incompatible(j));
        }
    }
    let (jmin, theta) = thetas.iter().enumerate().min_by(|x, y| x.1.cmp(y.1)).expect("nonempty");
    let base = &alphas[jmin];
    let m = base.entries();
    for s in m.entries() {
        if s.valuation().cmp_rational(theta) == core::cmp::Ordering::Less {
            return Err(MetricsError::Incompatible(jmin));
        }
    }
    let lifted = Matrix::from_fn(m.rows(), m.cols(), m.ring(), |i, k| m.get(i, k).div_monomial(theta));
    let lift = ModuleMap::with_degree(base.source().clone(), base.target().clone(), base.degree(), lifted)
        .map_err(|_| MetricsError::Incompatible(jmin))?;
    for (j, (a, t)) in alphas.iter().zip(thetas).enumerate() {
        if &lift.shift(t) != a {
            return Err(MetricsError::Incompatible(j));
        }
    }
    Ok(lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::matching_witness;
    use crate::novikov::rat;

    fn cyc(q: Rational) -> EqBarcode {
        EqBarcode::new(vec![q], 0, Exponent::Infinite).unwrap()
    }

    fn chain(lengths: &[Rational]) -> (Vec<EqBarcode>, Vec<Rational>, Vec<Interleaving>) {
        let seq: Vec<EqBarcode> = lengths.iter().map(|l| cyc(l.clone())).collect();
        let eps: Vec<Rational> = lengths.windows(2).map(|w| (&w[0] - &w[1]).abs()).collect();
        let wit = (0..eps.len())
            .map(|k| {
                let p = summand_matching(&seq[k], &seq[k + 1], &eps[k]).unwrap();
                matching_witness(&seq[k], &seq[k + 1], &eps[k], &p, Field::Rational).unwrap()
            })
            .collect();
        (seq, eps, wit)
    }

    #[test]
    fn geometric_limits() {
        let half = |n: i64| rat(1, 1 << n);
        let (s, e, w) = chain(&(0..6).map(|n| rat(1, 1) + half(n)).collect::<Vec<_>>());
        let l = cauchy_limit(&s, &e, &w, Field::Rational).unwrap();
        assert_eq!(l.limit, cyc(rat(1, 1)));
        assert!(l.certified());
        let (s, e, w) = chain(&(0..6).map(half).collect::<Vec<_>>());
        let l = cauchy_limit(&s, &e, &w, Field::Rational).unwrap();
        assert!(l.limit.is_zero());
        assert!(l.certified());
    }

    #[test]
    fn lift_of_shifted_system() {
        let e = cyc(rat(5, 1));
        let g = ModuleMap::identity(&e, Field::Rational);
        let thetas: Vec<Rational> = (1..5).map(|j| rat(1, j)).collect();
        let alphas: Vec<ModuleMap> = thetas.iter().map(|t| g.shift(t)).collect();
        assert_eq!(limit_lift(&alphas, &thetas).unwrap(), g);
        let mut broken = alphas.clone();
        broken[0] = g.shift(&rat(2, 1));
        assert!(limit_lift(&broken, &thetas).is_err());
    }
}
