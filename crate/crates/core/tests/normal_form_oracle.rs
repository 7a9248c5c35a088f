//! Normal forms of `U·D·V` with `D` diagonal and `U`, `V` unipotent over Λ₀
//! are read off `D` directly.

use novsheaf_core::matrix::Matrix;
use novsheaf_core::modcat::{normal_form, rank_function, NormalForm, PresentationModule};
use novsheaf_core::novikov::{rat, Field, NovikovScalar, Ring};
use proptest::prelude::*;

fn entry(ring: &Ring, (c, e): (i64, i64)) -> NovikovScalar {
    NovikovScalar::monomial(ring.field.from_i64(c), rat(e, 6), ring)
}

fn unipotent(ring: &Ring, n: usize, upper: bool, noise: &[(i64, i64)]) -> Matrix {
    let mut k = 0;
    Matrix::from_fn(n, n, ring, |i, j| {
        if i == j {
            NovikovScalar::one(ring)
        } else if (i < j) == upper {
            k += 1;
            entry(ring, noise[(k - 1) % noise.len()])
        } else {
            NovikovScalar::zero(ring)
        }
    })
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(5).unwrap())]
}

proptest! {
    #[test]
    fn conjugated_diagonal(
        field in field(),
        diag in prop::collection::vec(prop::option::weighted(0.8, 0i64..=24), 1..=4),
        noise in prop::collection::vec((-3i64..=3, 0i64..=12), 1..=12),
        noise2 in prop::collection::vec((-3i64..=3, 0i64..=12), 1..=12),
    ) {
        let ring = Ring::exact(field);
        let n = diag.len();
        let d = Matrix::from_fn(n, n, &ring, |i, j| match diag[i] {
            Some(e) if i == j => NovikovScalar::t_pow(&rat(e, 6), &ring),
            _ => NovikovScalar::zero(&ring),
        });
        let m = unipotent(&ring, n, true, &noise)
            .checked_mul(&d).unwrap()
            .checked_mul(&unipotent(&ring, n, false, &noise2)).unwrap();
        let expected = NormalForm::new(diag.iter().flatten().map(|&e| rat(e, 6)).collect(), diag.iter().filter(|e| e.is_none()).count());
        let got = normal_form(&PresentationModule::new(m.clone()));
        prop_assert_eq!(&got, &expected);
        for k in 0..=30 {
            prop_assert_eq!(rank_function(&m, &rat(k, 6)), expected.rank_at(&rat(k, 6)));
        }
    }

    /// Stacking extra relations that are combinations of existing ones changes nothing.
    #[test]
    fn redundant_relations(
        diag in prop::collection::vec(1i64..=24, 1..=3),
        coeffs in prop::collection::vec((-2i64..=2, 0i64..=6), 3),
    ) {
        let ring = Ring::exact(Field::Rational);
        let n = diag.len();
        let d = Matrix::from_fn(n, n, &ring, |i, j| if i == j { NovikovScalar::t_pow(&rat(diag[i], 6), &ring) } else { NovikovScalar::zero(&ring) });
        let combo = Matrix::from_fn(1, n, &ring, |_, j| entry(&ring, coeffs[j % coeffs.len()]));
        let extra = combo.checked_mul(&d).unwrap();
        let stacked = d.vstack(&extra).unwrap();
        prop_assert_eq!(normal_form(&PresentationModule::new(stacked)), normal_form(&PresentationModule::new(d)));
    }
}
