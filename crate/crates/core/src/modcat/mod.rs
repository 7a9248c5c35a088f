//! Finitely presented `Λ₀`-modules.
//!
//! A presentation matrix has one row per relation and one column per
//! generator; the module is the cokernel of the row space. Over a valuation
//! ring every such module is `⊕ Λ₀/T^{cᵢ} ⊕ Λ₀^r`, which is what
//! [`normal_form`] computes.

mod almost;
mod rank;
mod reduce;

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::linalg;
use crate::matrix::Matrix;
use crate::novikov::{Exponent, NovikovScalar, Rational, Ring};

pub use almost::{almost_parts, almost_parts_formal, AlmostDecomposition, FormalSum, FormalSummand};
pub use rank::{determinantal_divisors, invariant_factors, rank_function};
pub use reduce::left_kernel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModcatError {
    TruncationAboveCutoff { requested: Exponent, cutoff: Exponent },
}

impl fmt::Display for ModcatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModcatError::TruncationAboveCutoff { requested, cutoff } => {
                write!(f, "truncation level {} is not below the cutoff {}", requested, cutoff)
            }
        }
    }
}

impl core::error::Error for ModcatError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationModule {
    matrix: Matrix,
}

impl PresentationModule {
    pub fn new(matrix: Matrix) -> Self {
        PresentationModule { matrix }
    }

    /// The module `⊕ Λ₀/T^{cᵢ} ⊕ Λ₀^r` presented by a diagonal matrix.
    pub fn from_normal_form(nf: &NormalForm, ring: &Ring) -> Self {
        let n = nf.generators();
        let mut m = Matrix::zeros(nf.torsion.len(), n, ring);
        for (i, c) in nf.torsion.iter().enumerate() {
            m.set(i, i, NovikovScalar::t_pow(c, ring));
        }
        PresentationModule { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn relations(&self) -> usize {
        self.matrix.rows()
    }

    pub fn generators(&self) -> usize {
        self.matrix.cols()
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    /// Block-diagonal presentation of `self ⊕ other`.
    pub fn direct_sum(&self, other: &PresentationModule) -> PresentationModule {
        let (a, b) = (&self.matrix, &other.matrix);
        let ring = a.ring();
        let m = Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), ring, |i, j| {
            if i < a.rows() && j < a.cols() {
                a.get(i, j).clone()
            } else if i >= a.rows() && j >= a.cols() {
                b.get(i - a.rows(), j - a.cols()).clone()
            } else {
                NovikovScalar::zero(ring)
            }
        });
        PresentationModule { matrix: m }
    }
}

/// `⊕ᵢ Λ₀/T^{cᵢ} ⊕ Λ₀^{free_rank}` with lengths sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    pub torsion: Vec<Rational>,
    pub free_rank: usize,
}

impl NormalForm {
    pub fn new(mut torsion: Vec<Rational>, free_rank: usize) -> Self {
        torsion.retain(|c| !c.is_zero());
        torsion.sort_by(|a, b| b.cmp(a));
        NormalForm { torsion, free_rank }
    }

    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn free(rank: usize) -> Self {
        NormalForm::new(Vec::new(), rank)
    }

    pub fn cyclic(length: Rational) -> Self {
        NormalForm::new(alloc::vec![length], 0)
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Number of cyclic summands.
    pub fn generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// `free_rank + #{cᵢ > t}`.
    pub fn rank_at(&self, t: &Rational) -> usize {
        self.free_rank + self.torsion.iter().filter(|c| *c > t).count()
    }

    /// Least `a` with `T^a·id = 0`.
    pub fn torsion_order(&self) -> Exponent {
        if self.free_rank > 0 {
            Exponent::Infinite
        } else {
            self.torsion.first().cloned().map_or(Exponent::zero(), Exponent::Finite)
        }
    }

    pub fn direct_sum(&self, other: &NormalForm) -> NormalForm {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        NormalForm::new(t, self.free_rank + other.free_rank)
    }

    /// Summand lengths in storage order: torsion descending, then `∞` for
    /// each free summand.
    pub fn summand_lengths(&self) -> Vec<Exponent> {
        let mut v: Vec<Exponent> = self.torsion.iter().cloned().map(Exponent::Finite).collect();
        v.extend(core::iter::repeat_n(Exponent::Infinite, self.free_rank));
        v
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("torsion: [")?;
        for (i, c) in self.torsion.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "], free: {}", self.free_rank)
    }
}

/// Elementary-divisor normal form of the cokernel.
pub fn normal_form(m: &PresentationModule) -> NormalForm {
    let mut work = m.matrix.clone();
    let red = reduce::reduce(&mut work, false);
    let torsion = red.pivots.iter().map(|(_, _, v)| v.clone()).collect();
    NormalForm::new(torsion, m.generators() - red.pivots.len())
}

/// Least `a` with `T^a·id_M = 0`: `+∞` with a free part, `0` for `M = 0`.
pub fn torsion_order(m: &PresentationModule) -> Exponent {
    normal_form(m).torsion_order()
}

fn columns_prefix(m: &Matrix, k: usize) -> Matrix {
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..k).collect();
    m.select(&rows, &cols)
}

/// Kernel and cokernel of `x ↦ x·f` from `coker R_E` to `coker R_F`, over
/// `Λ₀` at infinite cutoff. Returns `(ker, coker, generators of ker)`, the
/// generators as rows in the source coordinates.
///
/// `coker f` is presented by `[f; R_F]`. The left kernel of `[f; R_F]`
/// projected to the source coordinates spans `ker f` (together with `R_E`),
/// and a second left kernel gives the relations among those generators.
pub fn kernel_cokernel(
    f: &Matrix,
    source_relations: &Matrix,
    target_relations: &Matrix,
) -> (NormalForm, NormalForm, Matrix) {
    let n_e = f.rows();
    let g = f.vstack(target_relations).expect("same width");
    let coker = normal_form(&PresentationModule::new(g.clone()));
    let k = left_kernel(&g);
    let kx = columns_prefix(&k, n_e);
    let stacked =
        if kx.rows() == 0 { source_relations.clone() } else { kx.vstack(source_relations).expect("same width") };
    let z = left_kernel(&stacked);
    let zrel = columns_prefix(&z, kx.rows());
    let ker = normal_form(&PresentationModule::new(zrel));
    (ker, coker, kx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChangeTarget {
    /// `⊗^L κ`
    Residue,
    /// `⊗ Λ₀/T^c`
    Truncation(Rational),
    /// `⊗ Λ`
    NovikovField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChange {
    /// Dimensions of `Tor₀` (degree 0) and `Tor₁` (degree −1).
    Residue {
        tor0: usize,
        tor1: usize,
    },
    /// The truncated module as a `Λ₀`-module; summands that became
    /// `Λ₀/T^c` are listed as torsion of length `c`.
    Truncation(NormalForm),
    NovikovField(usize),
}

/// Base change along `Λ₀ → κ`, `Λ₀ → Λ₀/T^c` or `Λ₀ → Λ`.
///
/// `Tor₀` is read off the residue of the presentation matrix; `Tor₁` counts
/// the torsion summands. Free summands of a truncated presentation are
/// treated as free.
pub fn base_change(m: &PresentationModule, target: &BaseChangeTarget) -> Result<BaseChange, ModcatError> {
    match target {
        BaseChangeTarget::Residue => {
            let tor0 = m.generators() - linalg::rank(&m.matrix.residue());
            let tor1 = normal_form(m).torsion.len();
            Ok(BaseChange::Residue { tor0, tor1 })
        }
        BaseChangeTarget::Truncation(c) => {
            if !m.ring().cutoff.exceeds(c) || c.is_zero() {
                return Err(ModcatError::TruncationAboveCutoff {
                    requested: Exponent::Finite(c.clone()),
                    cutoff: m.ring().cutoff.clone(),
                });
            }
            let nf = normal_form(m);
            let mut lengths: Vec<Rational> =
                nf.torsion.iter().map(|a| if a < c { a.clone() } else { c.clone() }).collect();
            lengths.extend(core::iter::repeat_n(c.clone(), nf.free_rank));
            Ok(BaseChange::Truncation(NormalForm::new(lengths, 0)))
        }
        BaseChangeTarget::NovikovField => Ok(BaseChange::NovikovField(normal_form(m).free_rank)),
    }
}
