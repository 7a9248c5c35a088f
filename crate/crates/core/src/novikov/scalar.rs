use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::exponent::{Exponent, Rational};
use super::field::{Field, FieldElement};
use super::literal;
use super::{NovikovError, Ring};

/// A truncated Novikov series `Σ aᵢ T^{cᵢ}` in `Λ₀/T^cΛ₀`.
///
/// Terms are kept sorted by strictly increasing exponent, every exponent
/// lies in `[0, cutoff)` and no coefficient is zero, so structural equality
/// is equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovScalar {
    terms: Vec<(Rational, FieldElement)>,
    ring: Ring,
}

impl NovikovScalar {
    pub fn zero(ring: &Ring) -> Self {
        NovikovScalar { terms: Vec::new(), ring: ring.clone() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring.field.one(), ring)
    }

    pub fn from_int(n: i64, ring: &Ring) -> Self {
        Self::constant(ring.field.from_i64(n), ring)
    }

    pub fn constant(c: FieldElement, ring: &Ring) -> Self {
        Self::monomial(c, Rational::zero(), ring)
    }

    /// `c·T^e`. Panics on a negative exponent or a coefficient from another
    /// field.
    pub fn monomial(c: FieldElement, e: Rational, ring: &Ring) -> Self {
        assert!(!e.is_negative(), "negative exponent in a Λ₀ scalar");
        assert_eq!(c.field(), ring.field, "coefficient from the wrong field");
        let mut s = Self::zero(ring);
        if !c.is_zero() && ring.cutoff.exceeds(&e) {
            s.terms.push((e, c));
        }
        s
    }

    /// `T^e`.
    pub fn t_pow(e: &Rational, ring: &Ring) -> Self {
        Self::monomial(ring.field.one(), e.clone(), ring)
    }

    /// Collects arbitrary terms into canonical form: duplicates summed,
    /// zeros and exponents at or beyond the cutoff dropped.
    pub fn from_terms<I>(terms: I, ring: &Ring) -> Result<Self, NovikovError>
    where
        I: IntoIterator<Item = (Rational, FieldElement)>,
    {
        let mut acc: BTreeMap<Rational, FieldElement> = BTreeMap::new();
        for (e, c) in terms {
            if e.is_negative() {
                return Err(NovikovError::NegativeExponent);
            }
            if c.field() != ring.field {
                return Err(NovikovError::FieldMismatch(c.field(), ring.field));
            }
            if !ring.cutoff.exceeds(&e) {
                continue;
            }
            match acc.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(NovikovScalar { terms, ring: ring.clone() })
    }

    pub fn terms(&self) -> &[(Rational, FieldElement)] {
        &self.terms
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cutoff(&self) -> &Exponent {
        &self.ring.cutoff
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    /// Least exponent with nonzero coefficient, `+∞` for zero.
    pub fn valuation(&self) -> Exponent {
        match self.terms.first() {
            Some((e, _)) => Exponent::Finite(e.clone()),
            None => Exponent::Infinite,
        }
    }

    pub fn leading(&self) -> Option<&(Rational, FieldElement)> {
        self.terms.first()
    }

    /// Image in the residue field κ = Λ₀/Λ₀⁺.
    pub fn residue(&self) -> FieldElement {
        self.coefficient(&Rational::zero())
    }

    pub fn coefficient(&self, e: &Rational) -> FieldElement {
        match self.terms.binary_search_by(|(x, _)| x.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field.zero(),
        }
    }

    /// Units of `Λ₀/T^c` are exactly the valuation-zero scalars.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.first(), Some((e, _)) if e.is_zero())
    }

    /// The monomial `T^{val}` has a monomial unit part; elimination uses
    /// this to avoid series growth.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn compatible(&self, other: &Self) -> Result<(), NovikovError> {
        if self.ring.field != other.ring.field {
            return Err(NovikovError::FieldMismatch(self.ring.field, other.ring.field));
        }
        if self.ring.cutoff != other.ring.cutoff {
            return Err(NovikovError::CutoffMismatch(self.ring.cutoff.clone(), other.ring.cutoff.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NovikovError> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NovikovError> {
        self.compatible(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NovikovError> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        NovikovScalar { terms: out, ring: self.ring.clone() }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut acc: BTreeMap<Rational, FieldElement> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if !self.ring.cutoff.exceeds(&e) {
                    // exponents of `other` only grow from here
                    break;
                }
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }

    /// Multiply by a field element.
    pub fn scale(&self, k: &FieldElement) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }

    /// Multiply by `T^e`, `e ≥ 0`.
    pub fn shift(&self, e: &Rational) -> Self {
        assert!(!e.is_negative(), "shift by a negative exponent");
        let terms = self
            .terms
            .iter()
            .map(|(x, c)| (x + e, c.clone()))
            .take_while(|(x, _)| self.ring.cutoff.exceeds(x))
            .collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }

    /// A representative of `self / T^e`, kept at the same cutoff.
    ///
    /// Only the part below `cutoff − e` is determined by `self`; the caller
    /// must multiply the result by something of valuation at least `e`
    /// before that ambiguity could matter.
    pub fn div_monomial(&self, e: &Rational) -> Self {
        assert!(self.valuation().cmp_rational(e) != Ordering::Less, "division by T^e with e above the valuation");
        let terms = self.terms.iter().map(|(x, c)| (x - e, c.clone())).collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }

    /// Reinterpret at another cutoff, dropping terms at or beyond it.
    /// Raising the cutoff picks the canonical representative.
    pub fn with_cutoff(&self, cutoff: &Exponent) -> Self {
        let ring = self.ring.with_cutoff(cutoff.clone());
        let terms = self.terms.iter().take_while(|(x, _)| cutoff.exceeds(x)).cloned().collect();
        NovikovScalar { terms, ring }
    }

    /// `self` with every exponent `≥ c` dropped but the cutoff unchanged.
    pub fn reduce_mod(&self, c: &Exponent) -> Self {
        let terms = self.terms.iter().take_while(|(x, _)| c.exceeds(x)).cloned().collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }

    /// Multiplicative inverse by the geometric series
    /// `a₀⁻¹ Σ (−u)^k` where `a = a₀(1 + u)`.
    pub fn inv(&self) -> Result<Self, NovikovError> {
        if self.is_zero() {
            return Err(NovikovError::DivisionByZero);
        }
        if !self.is_unit() {
            return Err(NovikovError::NonUnit);
        }
        let a0_inv = self.terms[0].1.inv().expect("leading coefficient is nonzero");
        if self.terms.len() == 1 {
            return Ok(Self::constant(a0_inv, &self.ring));
        }
        if self.ring.cutoff.is_infinite() {
            return Err(NovikovError::InfiniteCutoff);
        }
        let neg_u = -&self.scale(&a0_inv).add_unchecked(&-&Self::one(&self.ring));
        let mut sum = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        loop {
            power = power.mul_unchecked(&neg_u);
            if power.is_zero() {
                break;
            }
            sum = sum.add_unchecked(&power);
        }
        Ok(sum.scale(&a0_inv))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Parse the literal grammar; see [`literal::parse_scalar`].
    pub fn parse(text: &str, ring: &Ring) -> Result<Self, literal::ParseError> {
        literal::parse_scalar(text, ring.field, Some(&ring.cutoff))
    }

    /// The literal followed by its cutoff annotation.
    pub fn to_annotated_string(&self) -> alloc::string::String {
        match &self.ring.cutoff {
            Exponent::Infinite => alloc::format!("{} @inf", self),
            Exponent::Finite(c) => alloc::format!("{} @cutoff {}", self, c),
        }
    }
}

impl Add for &NovikovScalar {
    type Output = NovikovScalar;
    fn add(self, rhs: &NovikovScalar) -> NovikovScalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl Sub for &NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: &NovikovScalar) -> NovikovScalar {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl Mul for &NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: &NovikovScalar) -> NovikovScalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl Neg for &NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        NovikovScalar { terms, ring: self.ring.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NovikovScalar {
            type Output = NovikovScalar;
            fn $m(self, rhs: NovikovScalar) -> NovikovScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        -&self
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_terms(f, self.terms.iter().map(|(e, c)| (e, c)))
    }
}
