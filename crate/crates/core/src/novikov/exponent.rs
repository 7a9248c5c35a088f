use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for the exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An energy level: an exact rational or `+∞`.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(Rational),
    Infinite,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        Exponent::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Exponent::Finite(rat(n, d))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Exponent::Finite(q) => Some(q),
            Exponent::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Finite(q) if q.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Finite(q) => q.is_positive(),
            Exponent::Infinite => true,
        }
    }

    /// `self - q`; infinity stays infinite.
    pub fn minus(&self, q: &Rational) -> Exponent {
        match self {
            Exponent::Finite(x) => Exponent::Finite(x - q),
            Exponent::Infinite => Exponent::Infinite,
        }
    }

    /// Compare against a finite rational without allocating.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            Exponent::Finite(x) => x.cmp(q),
            Exponent::Infinite => Ordering::Greater,
        }
    }

    /// `true` when the finite value `q` lies strictly below this level.
    pub fn exceeds(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Greater
    }
}

impl From<Rational> for Exponent {
    fn from(q: Rational) -> Self {
        Exponent::Finite(q)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl Add<&Rational> for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Rational) -> Exponent {
        match self {
            Exponent::Finite(a) => Exponent::Finite(a + rhs),
            Exponent::Infinite => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(q) => write!(f, "{}", q),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

pub(crate) fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}
