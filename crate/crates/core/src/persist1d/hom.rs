use alloc::format;
use alloc::string::String;

use super::pl::{Base, PLFunction};
use super::sublevel::sublevel_persistence;
use super::Persist1dError;
use crate::barcode::{induce, GradedEqBarcode, PlainBarcode};
use crate::metrics::{graded_interleaving_distance, DistanceReport};
use crate::modcat::{base_change, BaseChange, BaseChangeTarget};
use crate::novikov::{Exponent, Field, Rational, Ring};

/// The sheaf `K_{t ≥ f(x)}` on `base × ℝ_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFObject {
    pub f: PLFunction,
    pub label: String,
}

impl GFObject {
    pub fn new(f: PLFunction, label: impl Into<String>) -> Self {
        GFObject { f, label: label.into() }
    }
}

/// `Hom(K_{t≥f}, K_{t≥g+c}) = RΓ({g + c ≥ f})` as `c` varies, i.e. the
/// sublevel persistence of `f − g`. Bar births are the generator
/// valuations.
pub fn hom_persistence(a: &GFObject, b: &GFObject) -> Result<PlainBarcode, Persist1dError> {
    Ok(sublevel_persistence(&a.f.sub(&b.f)?))
}

/// The Novikov module `Hom_{Λ₀}(f^L F, f^L G)`, degree by degree.
pub fn hom_module(a: &GFObject, b: &GFObject, cutoff: &Exponent) -> Result<GradedEqBarcode, Persist1dError> {
    Ok(induce(&hom_persistence(a, b)?, cutoff))
}

/// `(Σ_k dim_κ H^k(Hom ⊗^L κ), #crit(f − g))`.
///
/// Each `Λ₀/T^ℓ` contributes `Tor₀` and `Tor₁`, each `Λ₀` only `Tor₀`.
pub fn intersection_count_check(a: &GFObject, b: &GFObject) -> Result<(usize, usize), Persist1dError> {
    if matches!(a.f.base(), Base::Interval(..)) {
        return Err(Persist1dError::UnsupportedBase);
    }
    let h = a.f.sub(&b.f)?;
    if !h.is_generic() {
        return Err(Persist1dError::NonGeneric);
    }
    let ring = Ring::exact(Field::Rational);
    let mut lhs = 0;
    for m in induce(&sublevel_persistence(&h), &Exponent::Infinite).values() {
        match base_change(&m.presentation(&ring), &BaseChangeTarget::Residue) {
            Ok(BaseChange::Residue { tor0, tor1 }) => lhs += tor0 + tor1,
            _ => unreachable!("residue base change is total"),
        }
    }
    Ok((lhs, h.critical_points().len()))
}

/// `f ↦ f + h`.
pub fn hamiltonian_shift(a: &GFObject, h: &PLFunction) -> Result<GFObject, Persist1dError> {
    Ok(GFObject { f: a.f.add(h)?, label: format!("{}+h", a.label) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub distance: DistanceReport,
    pub oscillation: Rational,
}

impl StabilityReport {
    /// `d_I ≤ osc(h)` on the reported upper bound.
    pub fn holds(&self) -> bool {
        !self.distance.upper.exceeds(&self.oscillation)
    }
}

/// Distance between `Hom(F + h, G)` and `Hom(F, G)` against `osc(h)`.
pub fn stability_check(
    a: &GFObject,
    b: &GFObject,
    h: &PLFunction,
    cutoff: &Exponent,
    field: Field,
) -> Result<StabilityReport, Persist1dError> {
    let shifted = hamiltonian_shift(a, h)?;
    let before = hom_module(a, b, cutoff)?;
    let after = hom_module(&shifted, b, cutoff)?;
    let distance = graded_interleaving_distance(&after, &before, cutoff, field)?;
    Ok(StabilityReport { distance, oscillation: h.oscillation() })
}
