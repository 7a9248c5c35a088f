//! Scalars of `Λ₀/T^cΛ₀`, its residue field and the Novikov field `Λ`.

mod exponent;
mod field;
mod field_scalar;
mod literal;
mod scalar;

use core::fmt;

pub use exponent::{rat, Exponent, Rational};
pub use field::{Field, FieldElement, MAX_PRIME};
pub use field_scalar::NovikovFieldScalar;
pub use literal::{format_exponent, parse_exponent, parse_rational, parse_scalar, ParseError};
pub use scalar::NovikovScalar;

/// Coefficient field plus energy cutoff: the ring `Λ₀/T^cΛ₀` over 𝕂.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub cutoff: Exponent,
    pub field: Field,
}

impl Ring {
    /// Panics on a non-positive cutoff; use [`Ring::try_new`] for input.
    pub fn new(cutoff: Exponent, field: Field) -> Self {
        Self::try_new(cutoff, field).expect("cutoff must be positive")
    }

    pub fn try_new(cutoff: Exponent, field: Field) -> Result<Self, NovikovError> {
        if !cutoff.is_positive() || cutoff.is_zero() {
            return Err(NovikovError::BadCutoff(cutoff));
        }
        Ok(Ring { cutoff, field })
    }

    pub fn rational(cutoff: Exponent) -> Self {
        Ring::new(cutoff, Field::Rational)
    }

    pub fn exact(field: Field) -> Self {
        Ring::new(Exponent::Infinite, field)
    }

    pub fn with_cutoff(&self, cutoff: Exponent) -> Self {
        Ring::new(cutoff, self.field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NovikovError {
    CutoffMismatch(Exponent, Exponent),
    FieldMismatch(Field, Field),
    NonUnit,
    InfiniteCutoff,
    DivisionByZero,
    NegativeExponent,
    BadCutoff(Exponent),
    InvalidPrime(u64),
    NotInField(u64),
}

impl fmt::Display for NovikovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NovikovError::CutoffMismatch(a, b) => write!(f, "cutoff mismatch: {} vs {}", a, b),
            NovikovError::FieldMismatch(a, b) => write!(f, "field mismatch: {} vs {}", a, b),
            NovikovError::NonUnit => f.write_str("not a unit: valuation is positive"),
            NovikovError::InfiniteCutoff => f.write_str("operation needs a finite cutoff (series need not terminate)"),
            NovikovError::DivisionByZero => f.write_str("division by zero"),
            NovikovError::NegativeExponent => f.write_str("negative exponent in a Λ₀ scalar"),
            NovikovError::BadCutoff(c) => write!(f, "cutoff must be positive, got {}", c),
            NovikovError::InvalidPrime(p) => write!(f, "{} is not a supported prime", p),
            NovikovError::NotInField(p) => write!(f, "denominator divisible by {}", p),
        }
    }
}

impl core::error::Error for NovikovError {}
