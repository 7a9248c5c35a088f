//! Curved dgas over `Λ₀`, Maurer–Cartan solving, twisted complexes and the
//! correspondence between the two.
//!
//! Linear maps here use the column convention: `M·v` with `v` a
//! coefficient column, and `d(g_j) = Σ_i diff(i, j)·g_i`.

mod colimit;
mod dga;
mod family;
mod twisted;

use alloc::string::String;
use core::fmt;

use crate::novikov::Rational;

pub use colimit::{colimit_dga, push_forward, ColimitPresentation, DirectedSystem};
pub use dga::{
    gauge_transform, mc_residual, mc_solve, CurvedDGA, Element, Generator, HigherOperation, McOutcome,
    ObstructionReport,
};
pub use family::EndomorphismFamily;
pub use twisted::{sigma_decompose, tc_residual, tc_totalize, LevelObject, TotalComplex, TwistedComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvedError {
    Shape(String),
    RingMismatch,
    Degree(String),
    NoUnit,
    NotAssociative { triple: (usize, usize, usize) },
    NotLeibniz { pair: (usize, usize) },
    CurvatureNotSmall,
    DifferentialNotNilpotent,
    MalformedGapping,
    OffGapping(Rational),
    NotOneSided { from: usize, to: usize },
    NotSquareZero(usize),
    LevelOrder,
    NonTriangular { row_level: usize, col_level: usize },
    ObjectMismatch,
    NotMorphism(usize),
    EmptyFamily,
    NotGaugeElement,
    Unterminated,
}

impl fmt::Display for CurvedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvedError::Shape(s) => write!(f, "shape mismatch: {}", s),
            CurvedError::RingMismatch => f.write_str("entries from different rings"),
            CurvedError::Degree(s) => write!(f, "degree mismatch: {}", s),
            CurvedError::NoUnit => f.write_str("no unit element"),
            CurvedError::NotAssociative { triple: (i, j, k) } => {
                write!(f, "multiplication not associative on basis ({}, {}, {})", i, j, k)
            }
            CurvedError::NotLeibniz { pair: (i, j) } => write!(f, "Leibniz rule fails on basis ({}, {})", i, j),
            CurvedError::CurvatureNotSmall => f.write_str("curvature must have positive valuation"),
            CurvedError::DifferentialNotNilpotent => f.write_str("d² does not vanish modulo Λ₀⁺"),
            CurvedError::MalformedGapping => {
                f.write_str("gapping must start at 0, increase strictly and stay below the cutoff")
            }
            CurvedError::OffGapping(e) => write!(f, "exponent {} is not in the gapping monoid", e),
            CurvedError::NotOneSided { from, to } => write!(f, "map {} -> {} is not one-sided", from, to),
            CurvedError::NotSquareZero(i) => write!(f, "object {} has d² ≠ 0", i),
            CurvedError::LevelOrder => f.write_str("level offsets must increase strictly"),
            CurvedError::NonTriangular { row_level, col_level } => {
                write!(f, "differential has a block from level {} to level {}", col_level, row_level)
            }
            CurvedError::ObjectMismatch => f.write_str("objects do not match the family"),
            CurvedError::NotMorphism(k) => write!(f, "map {} is not a dga morphism", k),
            CurvedError::EmptyFamily => f.write_str("empty family"),
            CurvedError::NotGaugeElement => f.write_str("gauge element must be degree 0 and ≡ 1 mod Λ₀⁺"),
            CurvedError::Unterminated => f.write_str("series did not terminate; use a finite cutoff"),
        }
    }
}

impl core::error::Error for CurvedError {}
