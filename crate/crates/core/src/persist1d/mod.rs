//! A desk-scale model of generating-function sheaves `K_{t ≥ f(x)}` over a
//! point, an interval or the circle.
//!
//! Hom between two such objects is the sublevel persistence of `f − g`,
//! induced to a graded Novikov module. The module also carries the shift
//! action of base-dependent Hamiltonians and the rank-one classification
//! map on the circle.

mod hom;
mod local;
mod pl;
mod sublevel;

use alloc::string::String;
use core::fmt;

use crate::metrics::MetricsError;

pub use hom::{
    hamiltonian_shift, hom_module, hom_persistence, intersection_count_check, stability_check, GFObject,
    StabilityReport,
};
pub use local::{cl, cl_invert, NovikovLocalSystem};
pub use pl::{Base, PLFunction};
pub use sublevel::sublevel_persistence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Persist1dError {
    BaseMismatch,
    Breakpoints(String),
    NonGeneric,
    UnsupportedBase,
    BadMagnitude,
    NonPositiveValuation,
    NotInImage,
    Metrics(MetricsError),
}

impl fmt::Display for Persist1dError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Persist1dError::BaseMismatch => f.write_str("functions live on different bases"),
            Persist1dError::Breakpoints(s) => write!(f, "bad breakpoints: {}", s),
            Persist1dError::NonGeneric => {
                f.write_str("function is not generic (flat segment or repeated extremum value); perturb it first")
            }
            Persist1dError::UnsupportedBase => f.write_str("operation needs a circle or point base"),
            Persist1dError::BadMagnitude => f.write_str("perturbation magnitude must be positive"),
            Persist1dError::NonPositiveValuation => f.write_str("class must have positive valuation"),
            Persist1dError::NotInImage => f.write_str("monodromy is not congruent to 1 modulo Λ₀⁺"),
            Persist1dError::Metrics(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for Persist1dError {}

impl From<MetricsError> for Persist1dError {
    fn from(e: MetricsError) -> Self {
        Persist1dError::Metrics(e)
    }
}
