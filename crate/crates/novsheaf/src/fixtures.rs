//! Small hand-written inputs shared by the demos, tests and documentation.

use novsheaf_core::curved::CurvedDGA;
use novsheaf_core::novikov::{Exponent, Field};

use crate::format::read_dga;

/// `⟨1, x, y⟩` with `x·x = y`, `d(x) = T^c·y` and no curvature.
pub fn mc_fixture_text(c: &str) -> String {
    format!(
        "cutoff inf\ngapping 0 {c}\nbasis one 0\nbasis x 1\nbasis y 2\n\
         mult one*one = one\nmult one*x = x\nmult x*one = x\nmult one*y = y\nmult y*one = y\n\
         mult x*x = y\nd x = (T^{c})*y\n"
    )
}

/// `⟨1, y⟩` with curvature `T·y` and `y` closed but not exact: no degree-1
/// elements, so the curvature cannot be cancelled.
pub const OBSTRUCTION_FIXTURE: &str = "cutoff 5\ngapping 0 1\nbasis one 0\nbasis y 2\n\
    mult one*one = one\nmult one*y = y\nmult y*one = y\ncurvature = T*y\n";

pub fn mc_fixture(c: &str) -> CurvedDGA {
    read_dga(&mc_fixture_text(c), Field::Rational, None).expect("fixture parses")
}

pub fn obstruction_fixture() -> CurvedDGA {
    read_dga(OBSTRUCTION_FIXTURE, Field::Rational, Some(&Exponent::int(5))).expect("fixture parses")
}
