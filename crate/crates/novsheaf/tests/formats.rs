//! Write/read round trips on generated objects.

use novsheaf::{format, gen};
use novsheaf_core::barcode::PlainBarcode;
use novsheaf_core::novikov::{rat, Exponent, Field, Ring};
use proptest::prelude::*;

proptest! {
    #[test]
    fn matrix(seed in any::<u64>(), r in 1usize..=4, c in 1usize..=4, finite in any::<bool>()) {
        let mut rng = gen::rng(seed);
        let cutoff = if finite { Exponent::int(3) } else { Exponent::Infinite };
        let m = gen::matrix(&mut rng, r, c, &Ring::new(cutoff, Field::Rational), 6, 4);
        prop_assert_eq!(format::read_matrix(&format::write_matrix(&m), Field::Rational).unwrap(), m);
    }

    #[test]
    fn pl(seed in any::<u64>(), n in 1usize..=8) {
        let f = gen::pl_circle_any(&mut gen::rng(seed), n, 4, &rat(-3, 1), &rat(3, 1));
        prop_assert_eq!(format::read_pl(&format::write_pl(&f)).unwrap(), f);
    }

    #[test]
    fn barcode(seed in any::<u64>(), n in 1usize..=8) {
        let f = gen::pl_circle_any(&mut gen::rng(seed), n, 4, &rat(-3, 1), &rat(3, 1));
        let b: PlainBarcode = novsheaf_core::persist1d::sublevel_persistence(&f);
        prop_assert_eq!(format::read_barcode(&format::write_barcode(&b)).unwrap(), b);
    }

    #[test]
    fn twisted(seed in any::<u64>()) {
        let t = gen::twisted_complex(&mut gen::rng(seed), &Ring::exact(Field::Rational));
        prop_assert_eq!(format::read_twisted(&format::write_twisted(&t), Field::Rational, None).unwrap(), t);
    }
}

#[test]
fn dga() {
    let a = novsheaf::fixtures::mc_fixture("1/2");
    assert_eq!(format::read_dga(&format::write_dga(&a), Field::Rational, None).unwrap(), a);
}
