use super::Persist1dError;
use crate::novikov::{Exponent, NovikovScalar, Ring};

/// A rank-one local system on the circle with fibre `Λ₀/T^c`, determined by
/// its monodromy `1 + b`. Conjugation is trivial in rank one, so two systems
/// are isomorphic exactly when their monodromies agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovLocalSystem {
    monodromy: NovikovScalar,
}

impl NovikovLocalSystem {
    pub fn trivial(ring: &Ring) -> Self {
        NovikovLocalSystem { monodromy: NovikovScalar::one(ring) }
    }

    /// Systems whose monodromy reduces to 1 in `κ`, the image of [`cl`].
    pub fn from_monodromy(m: NovikovScalar) -> Result<Self, Persist1dError> {
        if (&m - &NovikovScalar::one(m.ring())).valuation() <= Exponent::zero() {
            return Err(Persist1dError::NotInImage);
        }
        Ok(NovikovLocalSystem { monodromy: m })
    }

    pub fn monodromy(&self) -> &NovikovScalar {
        &self.monodromy
    }

    pub fn cutoff(&self) -> &Exponent {
        self.monodromy.cutoff()
    }

    pub fn is_isomorphic(&self, other: &NovikovLocalSystem) -> bool {
        self.monodromy == other.monodromy
    }
}

/// `b ↦` the system glued by `1 + b`.
pub fn cl(b: &NovikovScalar) -> Result<NovikovLocalSystem, Persist1dError> {
    if b.valuation() <= Exponent::zero() {
        return Err(Persist1dError::NonPositiveValuation);
    }
    Ok(NovikovLocalSystem { monodromy: &NovikovScalar::one(b.ring()) + b })
}

pub fn cl_invert(l: &NovikovLocalSystem) -> NovikovScalar {
    &l.monodromy - &NovikovScalar::one(l.monodromy.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, Field};

    #[test]
    fn round_trip() {
        let ring = Ring::new(Exponent::int(2), Field::Rational);
        let b = NovikovScalar::t_pow(&rat(1, 3), &ring);
        let l = cl(&b).unwrap();
        assert_eq!(l.monodromy(), &(&NovikovScalar::one(&ring) + &b));
        assert_eq!(cl_invert(&l), b);
        assert_eq!(cl(&NovikovScalar::zero(&ring)).unwrap(), NovikovLocalSystem::trivial(&ring));
        assert_eq!(cl(&NovikovScalar::one(&ring)), Err(Persist1dError::NonPositiveValuation));
        assert!(!l.is_isomorphic(&NovikovLocalSystem::trivial(&ring)));
        assert!(NovikovLocalSystem::from_monodromy(NovikovScalar::from_int(2, &ring)).is_err());
    }
}
