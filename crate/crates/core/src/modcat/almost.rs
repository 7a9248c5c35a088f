//! Almost-zero bookkeeping.
//!
//! Finitely presented modules never contain a `Λ₀/Λ₀⁺` summand, so for them
//! the almost-zero part is always trivial. Externally supplied formal sums
//! may carry such summands as explicit markers; they are split off here.

use alloc::vec::Vec;

use super::{normal_form, NormalForm, PresentationModule};
use crate::novikov::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalSummand {
    Free,
    Cyclic(Rational),
    /// `Λ₀/Λ₀⁺`, the residue field as a module: killed by `⊗ Λ₀⁺`.
    AlmostZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum {
    pub summands: Vec<FormalSummand>,
}

/// `M₀ = {m : Λ₀⁺m = 0}` as a count of `Λ₀/Λ₀⁺` markers, and `M_a = M/M₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostDecomposition {
    pub almost_zero: usize,
    pub almost: NormalForm,
}

pub fn almost_parts(m: &PresentationModule) -> AlmostDecomposition {
    AlmostDecomposition { almost_zero: 0, almost: normal_form(m) }
}

pub fn almost_parts_formal(sum: &FormalSum) -> AlmostDecomposition {
    let mut torsion = Vec::new();
    let mut free = 0;
    let mut markers = 0;
    for s in &sum.summands {
        match s {
            FormalSummand::Free => free += 1,
            FormalSummand::Cyclic(c) => torsion.push(c.clone()),
            FormalSummand::AlmostZero => markers += 1,
        }
    }
    AlmostDecomposition { almost_zero: markers, almost: NormalForm::new(torsion, free) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::novikov::{rat, Field, NovikovScalar, Ring};

    #[test]
    fn finitely_presented_modules_are_almost_themselves() {
        let ring = Ring::exact(Field::Rational);
        let m = Matrix::diagonal(&[NovikovScalar::t_pow(&rat(2, 1), &ring)], &ring);
        let parts = almost_parts(&PresentationModule::new(m));
        assert_eq!(parts.almost_zero, 0);
        assert_eq!(parts.almost, NormalForm::cyclic(rat(2, 1)));
    }

    #[test]
    fn markers_split_off() {
        let marker = FormalSum { summands: alloc::vec![FormalSummand::AlmostZero] };
        let parts = almost_parts_formal(&marker);
        assert_eq!((parts.almost_zero, parts.almost.is_zero()), (1, true));
        let mixed = FormalSum { summands: alloc::vec![FormalSummand::Free, FormalSummand::AlmostZero] };
        let parts = almost_parts_formal(&mixed);
        assert_eq!((parts.almost_zero, parts.almost), (1, NormalForm::free(1)));
    }
}
