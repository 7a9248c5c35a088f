//! Exact algebra over the Novikov ring `Λ₀ = 𝕂[[T^ℚ≥0]]`.
//!
//! Everything here is pure, allocation-backed and free of floating point:
//! scalar arithmetic truncated at an energy cutoff, finitely presented
//! modules and their elementary-divisor normal forms, the barcode model of
//! the equivariant sheaf category over a point, interleaving distances,
//! curved dgas with Maurer–Cartan solving, twisted complexes, and a 1-D
//! generating-function model built on sublevel persistence.
//!
//! File formats, the command line and randomized generators live in the
//! `novsheaf` companion crate.

#![cfg_attr(not(test), no_std)]
// Errors carry exact exponents; matrix loops index several arrays at once.
#![allow(clippy::result_large_err, clippy::needless_range_loop)]

extern crate alloc;

pub mod barcode;
pub mod curved;
pub mod linalg;
pub mod matrix;
pub mod metrics;
pub mod modcat;
pub mod novikov;
pub mod persist1d;

pub use novikov::{Exponent, Field, FieldElement, NovikovError, NovikovFieldScalar, NovikovScalar, Rational, Ring};
