use alloc::vec::Vec;
use core::fmt;

use super::exponent::{Exponent, Rational};
use super::field::{Field, FieldElement};
use super::literal;
use super::scalar::NovikovScalar;
use super::{NovikovError, Ring};

/// An element `T^{shift}·body` of the Novikov field `Λ`, known modulo
/// `T^{shift + precision}`.
///
/// The body is a valuation-zero scalar whose cutoff is the relative
/// precision. A value indistinguishable from zero at the available
/// precision is stored as `Zero` with its absolute precision, so every
/// element has one canonical representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NovikovFieldScalar {
    Zero { precision: Exponent, field: Field },
    Nonzero { shift: Rational, body: NovikovScalar },
}

impl NovikovFieldScalar {
    pub fn zero(precision: Exponent, field: Field) -> Self {
        NovikovFieldScalar::Zero { precision, field }
    }

    /// `T^{shift}·body` with `body` a unit; its cutoff becomes the
    /// relative precision.
    pub fn new(shift: Rational, body: NovikovScalar) -> Result<Self, NovikovError> {
        if !body.is_unit() {
            return Err(NovikovError::NonUnit);
        }
        Ok(NovikovFieldScalar::Nonzero { shift, body })
    }

    /// Embed `Λ₀/T^c` into `Λ`. A scalar of valuation `v` keeps relative
    /// precision `c − v`.
    pub fn from_scalar(s: &NovikovScalar) -> Self {
        match s.leading() {
            None => NovikovFieldScalar::Zero { precision: s.cutoff().clone(), field: s.field() },
            Some((v, _)) => {
                let rel = s.cutoff().minus(v);
                let body = s.div_monomial(v).with_cutoff(&rel);
                NovikovFieldScalar::Nonzero { shift: v.clone(), body }
            }
        }
    }

    /// `T^e` for any rational `e`, exact.
    pub fn monomial(e: Rational, field: Field) -> Self {
        let ring = Ring::exact(field);
        NovikovFieldScalar::Nonzero { shift: e, body: NovikovScalar::one(&ring) }
    }

    pub fn field(&self) -> Field {
        match self {
            NovikovFieldScalar::Zero { field, .. } => *field,
            NovikovFieldScalar::Nonzero { body, .. } => body.field(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NovikovFieldScalar::Zero { .. })
    }

    pub fn valuation(&self) -> Exponent {
        match self {
            NovikovFieldScalar::Zero { .. } => Exponent::Infinite,
            NovikovFieldScalar::Nonzero { shift, .. } => Exponent::Finite(shift.clone()),
        }
    }

    /// Relative precision: how many orders past the leading term are known.
    pub fn precision(&self) -> Exponent {
        match self {
            NovikovFieldScalar::Zero { precision, .. } => precision.clone(),
            NovikovFieldScalar::Nonzero { body, .. } => body.cutoff().clone(),
        }
    }

    /// The element is determined modulo `T^{absolute_precision}`.
    pub fn absolute_precision(&self) -> Exponent {
        match self {
            NovikovFieldScalar::Zero { precision, .. } => precision.clone(),
            NovikovFieldScalar::Nonzero { shift, body } => body.cutoff() + shift,
        }
    }

    /// Membership in the filtration level `F^ε = T^ε Λ₀`.
    pub fn in_filtration(&self, level: &Rational) -> bool {
        self.valuation().cmp_rational(level) != core::cmp::Ordering::Less
    }

    /// Terms `(exponent, coefficient)` with exponents possibly negative.
    pub fn terms(&self) -> Vec<(Rational, FieldElement)> {
        match self {
            NovikovFieldScalar::Zero { .. } => Vec::new(),
            NovikovFieldScalar::Nonzero { shift, body } => {
                body.terms().iter().map(|(e, c)| (e + shift, c.clone())).collect()
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), NovikovError> {
        if self.field() != other.field() {
            return Err(NovikovError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    /// Normalize terms known modulo `T^{abs}`.
    fn from_absolute(mut terms: Vec<(Rational, FieldElement)>, abs: Exponent, field: Field) -> Self {
        terms.retain(|(e, c)| !c.is_zero() && abs.exceeds(e));
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        match terms.first() {
            None => NovikovFieldScalar::Zero { precision: abs, field },
            Some((v, _)) => {
                let v = v.clone();
                let rel = abs.minus(&v);
                let ring = Ring::new(rel, field);
                let body = terms.iter().map(|(e, c)| (e - &v, c.clone()));
                let body = NovikovScalar::from_terms(body, &ring).expect("shifted terms are valid");
                NovikovFieldScalar::Nonzero { shift: v, body }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check_field(other)?;
        let abs = core::cmp::min(self.absolute_precision(), other.absolute_precision());
        let mut acc: alloc::collections::BTreeMap<Rational, FieldElement> = Default::default();
        for (e, c) in self.terms().into_iter().chain(other.terms()) {
            match acc.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Self::from_absolute(acc.into_iter().collect(), abs, self.field()))
    }

    pub fn neg(&self) -> Self {
        match self {
            NovikovFieldScalar::Zero { .. } => self.clone(),
            NovikovFieldScalar::Nonzero { shift, body } => {
                NovikovFieldScalar::Nonzero { shift: shift.clone(), body: -body }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NovikovError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check_field(other)?;
        use NovikovFieldScalar::*;
        Ok(match (self, other) {
            (Zero { precision: a, field }, Zero { precision: b, .. }) => Zero { precision: a + b, field: *field },
            (Zero { precision, field }, Nonzero { shift, .. }) | (Nonzero { shift, .. }, Zero { precision, field }) => {
                Zero { precision: precision + shift, field: *field }
            }
            (Nonzero { shift: sa, body: ba }, Nonzero { shift: sb, body: bb }) => {
                let rel = core::cmp::min(ba.cutoff().clone(), bb.cutoff().clone());
                let body = &ba.with_cutoff(&rel) * &bb.with_cutoff(&rel);
                Nonzero { shift: sa + sb, body }
            }
        })
    }

    /// Inverse at the same relative precision.
    pub fn inv(&self) -> Result<Self, NovikovError> {
        match self {
            NovikovFieldScalar::Zero { .. } => Err(NovikovError::DivisionByZero),
            NovikovFieldScalar::Nonzero { shift, body } => {
                Ok(NovikovFieldScalar::Nonzero { shift: -shift, body: body.inv()? })
            }
        }
    }
}

impl fmt::Display for NovikovFieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        literal::write_terms(f, terms.iter().map(|(e, c)| (e, c)))?;
        write!(f, " @precision {}", self.absolute_precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{parse_scalar, rat};

    fn field_scalar(text: &str, shift: i64) -> NovikovFieldScalar {
        let body = parse_scalar(text, Field::Rational, None).unwrap();
        NovikovFieldScalar::new(rat(shift, 1), body).unwrap()
    }

    #[test]
    fn monomials_cancel() {
        let a = NovikovFieldScalar::monomial(rat(-2, 1), Field::Rational);
        let b = NovikovFieldScalar::monomial(rat(2, 1), Field::Rational);
        let one = NovikovFieldScalar::monomial(rat(0, 1), Field::Rational);
        assert_eq!(a.mul(&b).unwrap(), one);
    }

    #[test]
    fn inverse_of_shifted_unit() {
        // T·(1+T) known to three orders past its leading term
        let x = field_scalar("1 + T @cutoff 3", 1);
        let y = x.inv().unwrap();
        assert_eq!(y.terms(), field_scalar("1 - T + T^2 @cutoff 3", -1).terms());
        assert_eq!(y.absolute_precision(), Exponent::int(2));
        let back = x.mul(&y).unwrap();
        assert_eq!(back.terms(), NovikovFieldScalar::monomial(rat(0, 1), Field::Rational).terms());
        assert!(NovikovFieldScalar::zero(Exponent::int(1), Field::Rational).inv().is_err());
    }

    #[test]
    fn filtration_membership() {
        let unit = parse_scalar("2 + T @cutoff 4", Field::Rational, None).unwrap();
        for eps in -3..=3 {
            let x = NovikovFieldScalar::new(rat(eps, 1), unit.clone()).unwrap();
            for delta in -3..=3 {
                assert_eq!(x.in_filtration(&rat(-delta, 1)), eps >= -delta);
            }
        }
    }

    #[test]
    fn addition_tracks_precision() {
        let a = field_scalar("1 + T @cutoff 2", 0);
        let b = field_scalar("-1 @cutoff 5", 0);
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation(), Exponent::int(1));
        assert_eq!(s.absolute_precision(), Exponent::int(2));
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
    }
}
