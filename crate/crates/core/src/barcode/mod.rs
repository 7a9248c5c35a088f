//! The barcode model of the equivariant sheaf category over a point.
//!
//! A [`PlainBarcode`] lists half-open bars `[b, b+ℓ)` (the interval sheaves
//! `K_{[b,b+ℓ)}`) with a cohomological degree. Inducing along the ℝ-action
//! forgets births and yields an [`EqBarcode`], i.e. a finitely presented
//! `Λ₀`-module `⊕ Λ₀/T^ℓ ⊕ Λ₀^r`.

mod map;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::modcat::{NormalForm, PresentationModule};
use crate::novikov::{Exponent, Rational, Ring};

pub use map::{cone, hom, ConeCohomology, HomGenerator, HomModule, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarcodeError {
    CutoffMismatch(Exponent, Exponent),
    BadLength(Exponent),
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Entry `(i, j)` has valuation below the forced minimum.
    Valuation {
        row: usize,
        col: usize,
        required: Exponent,
        found: Exponent,
    },
    /// A nonzero entry from a torsion summand into a free summand.
    TorsionToFree {
        row: usize,
        col: usize,
    },
    NotComposable,
}

impl fmt::Display for BarcodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarcodeError::CutoffMismatch(a, b) => write!(f, "cutoff mismatch: {} vs {}", a, b),
            BarcodeError::BadLength(l) => write!(f, "bar length must be positive, got {}", l),
            BarcodeError::Shape { expected, found } => {
                write!(f, "matrix shape {}x{} does not match summands {}x{}", found.0, found.1, expected.0, expected.1)
            }
            BarcodeError::Valuation { row, col, required, found } => {
                write!(f, "entry ({}, {}) has valuation {} but at least {} is forced", row, col, found, required)
            }
            BarcodeError::TorsionToFree { row, col } => {
                write!(f, "entry ({}, {}) maps a torsion summand into a free one", row, col)
            }
            BarcodeError::NotComposable => f.write_str("maps are not composable"),
        }
    }
}

impl core::error::Error for BarcodeError {}

/// The interval sheaf `K_{[birth, birth+length)}` placed in `degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlainBar {
    pub degree: i32,
    pub birth: Rational,
    pub length: Exponent,
}

impl PlainBar {
    pub fn new(birth: Rational, length: Exponent) -> Self {
        PlainBar { degree: 0, birth, length }
    }

    pub fn in_degree(mut self, degree: i32) -> Self {
        self.degree = degree;
        self
    }

    pub fn death(&self) -> Exponent {
        &self.length + &self.birth
    }

    /// Whether `t` lies in `[birth, birth + length)`.
    pub fn contains(&self, t: &Rational) -> bool {
        &self.birth <= t && self.death().exceeds(t)
    }
}

/// A multiset of bars kept sorted, so equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct PlainBarcode {
    bars: Vec<PlainBar>,
}

impl PlainBarcode {
    pub fn new(mut bars: Vec<PlainBar>) -> Result<Self, BarcodeError> {
        for b in &bars {
            if !b.length.is_positive() || b.length.is_zero() {
                return Err(BarcodeError::BadLength(b.length.clone()));
            }
        }
        bars.sort();
        Ok(PlainBarcode { bars })
    }

    pub fn empty() -> Self {
        PlainBarcode::default()
    }

    pub fn bars(&self) -> &[PlainBar] {
        &self.bars
    }

    pub fn in_degree(&self, degree: i32) -> impl Iterator<Item = &PlainBar> {
        self.bars.iter().filter(move |b| b.degree == degree)
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn union(&self, other: &PlainBarcode) -> PlainBarcode {
        let mut bars = self.bars.clone();
        bars.extend(other.bars.iter().cloned());
        bars.sort();
        PlainBarcode { bars }
    }
}

impl fmt::Display for PlainBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bars {
            writeln!(f, "{} {} {}", b.birth, b.length, b.degree)?;
        }
        Ok(())
    }
}

/// `⊕ Λ₀/T^{ℓᵢ} ⊕ Λ₀^r` over `Λ₀/T^c`. Summands of length at or above the
/// cutoff are indistinguishable from free ones there and are stored as free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EqBarcode {
    nf: NormalForm,
    cutoff: Exponent,
}

impl EqBarcode {
    pub fn new(torsion: Vec<Rational>, free_rank: usize, cutoff: Exponent) -> Result<Self, BarcodeError> {
        let mut kept = Vec::new();
        let mut free = free_rank;
        for c in torsion {
            if !c.is_positive() {
                return Err(BarcodeError::BadLength(Exponent::Finite(c)));
            }
            if cutoff.exceeds(&c) {
                kept.push(c);
            } else {
                free += 1;
            }
        }
        Ok(EqBarcode { nf: NormalForm::new(kept, free), cutoff })
    }

    pub fn from_normal_form(nf: &NormalForm, cutoff: Exponent) -> Result<Self, BarcodeError> {
        Self::new(nf.torsion.clone(), nf.free_rank, cutoff)
    }

    /// `1_μ`: one free summand.
    pub fn unit(cutoff: Exponent) -> Self {
        EqBarcode { nf: NormalForm::free(1), cutoff }
    }

    pub fn zero(cutoff: Exponent) -> Self {
        EqBarcode { nf: NormalForm::zero(), cutoff }
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn torsion(&self) -> &[Rational] {
        &self.nf.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.nf.free_rank
    }

    pub fn cutoff(&self) -> &Exponent {
        &self.cutoff
    }

    pub fn ring(&self, field: crate::novikov::Field) -> Ring {
        Ring::new(self.cutoff.clone(), field)
    }

    pub fn is_zero(&self) -> bool {
        self.nf.is_zero()
    }

    /// Summand lengths: torsion descending, then `∞` per free summand.
    pub fn lengths(&self) -> Vec<Exponent> {
        self.nf.summand_lengths()
    }

    /// As [`lengths`](Self::lengths), but a free summand at a finite cutoff
    /// `c` is `Λ₀/T^c` and gets length `c`.
    pub fn effective_lengths(&self) -> Vec<Exponent> {
        self.lengths().into_iter().map(|l| if l.is_infinite() { self.cutoff.clone() } else { l }).collect()
    }

    pub fn len(&self) -> usize {
        self.nf.generators()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn torsion_order(&self) -> Exponent {
        self.nf.torsion_order()
    }

    pub fn rank_at(&self, t: &Rational) -> usize {
        self.nf.rank_at(t)
    }

    pub fn direct_sum(&self, other: &EqBarcode) -> Result<EqBarcode, BarcodeError> {
        self.check_cutoff(other)?;
        Ok(EqBarcode { nf: self.nf.direct_sum(&other.nf), cutoff: self.cutoff.clone() })
    }

    pub fn presentation(&self, ring: &Ring) -> PresentationModule {
        PresentationModule::from_normal_form(&self.nf, ring)
    }

    fn check_cutoff(&self, other: &EqBarcode) -> Result<(), BarcodeError> {
        if self.cutoff != other.cutoff {
            return Err(BarcodeError::CutoffMismatch(self.cutoff.clone(), other.cutoff.clone()));
        }
        Ok(())
    }
}

impl fmt::Display for EqBarcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nf)
    }
}

/// Cohomological degree ↦ equivariant barcode.
pub type GradedEqBarcode = BTreeMap<i32, EqBarcode>;

fn min_len(a: &Exponent, b: &Exponent) -> Exponent {
    core::cmp::min(a.clone(), b.clone())
}

fn graded_push(out: &mut GradedEqBarcode, degree: i32, length: Exponent, cutoff: &Exponent) {
    let slot = out.entry(degree).or_insert_with(|| EqBarcode::zero(cutoff.clone()));
    let piece = match length {
        Exponent::Finite(c) => EqBarcode::new(alloc::vec![c], 0, cutoff.clone()),
        Exponent::Infinite => EqBarcode::new(Vec::new(), 1, cutoff.clone()),
    }
    .expect("positive length");
    *slot = slot.direct_sum(&piece).expect("same cutoff");
}

/// Convolution of plain barcodes.
///
/// On generators: rays add, a ray and a finite bar give a finite bar of the
/// same length, and two finite bars `[a, a+ℓ)`, `[b, b+m)` give
/// `[a+b, a+b+min)` in the summed degree plus `[a+b+max, a+b+ℓ+m)` one
/// degree higher (the compactly supported cohomology of an open segment).
pub fn star_plain(a: &PlainBarcode, b: &PlainBarcode) -> PlainBarcode {
    let mut bars = Vec::new();
    for x in &a.bars {
        for y in &b.bars {
            let birth = &x.birth + &y.birth;
            let degree = x.degree + y.degree;
            match (&x.length, &y.length) {
                (Exponent::Infinite, l) | (l, Exponent::Infinite) => {
                    bars.push(PlainBar { degree, birth, length: l.clone() });
                }
                (Exponent::Finite(l), Exponent::Finite(m)) => {
                    let (lo, hi) = if l <= m { (l, m) } else { (m, l) };
                    bars.push(PlainBar { degree, birth: birth.clone(), length: Exponent::Finite(lo.clone()) });
                    bars.push(PlainBar {
                        degree: degree + 1,
                        birth: &birth + hi,
                        length: Exponent::Finite(lo.clone()),
                    });
                }
            }
        }
    }
    bars.sort();
    PlainBarcode { bars }
}

/// `E ⋆_𝔾 F`: the module tensor product `Λ₀/T^a ⊗ Λ₀/T^b = Λ₀/T^{min(a,b)}`
/// with free summands acting as the unit.
pub fn star_eq(a: &EqBarcode, b: &EqBarcode) -> Result<EqBarcode, BarcodeError> {
    a.check_cutoff(b)?;
    let mut torsion = Vec::new();
    let mut free = 0;
    for x in a.lengths() {
        for y in b.lengths() {
            match min_len(&x, &y) {
                Exponent::Finite(c) => torsion.push(c),
                Exponent::Infinite => free += 1,
            }
        }
    }
    EqBarcode::new(torsion, free, a.cutoff.clone())
}

/// `Tor₁(E, F)`: one `Λ₀/T^{min(a,b)}` per pair of torsion summands.
pub fn star_tor(a: &EqBarcode, b: &EqBarcode) -> Result<EqBarcode, BarcodeError> {
    a.check_cutoff(b)?;
    let mut torsion = Vec::new();
    for x in a.torsion() {
        for y in b.torsion() {
            torsion.push(core::cmp::min(x, y).clone());
        }
    }
    EqBarcode::new(torsion, 0, a.cutoff.clone())
}

/// `E ⋆_{𝔾𝕆} b`: tensor with `Λ₀/T^ℓ` for each bar, the `Tor` part landing
/// one degree above the bar.
pub fn star_mixed(e: &GradedEqBarcode, b: &PlainBarcode, cutoff: &Exponent) -> Result<GradedEqBarcode, BarcodeError> {
    let mut out = GradedEqBarcode::new();
    for (&k, ek) in e {
        if ek.cutoff() != cutoff {
            return Err(BarcodeError::CutoffMismatch(ek.cutoff().clone(), cutoff.clone()));
        }
        for bar in &b.bars {
            let cyc = match &bar.length {
                Exponent::Finite(l) => EqBarcode::new(alloc::vec![l.clone()], 0, cutoff.clone())?,
                Exponent::Infinite => EqBarcode::unit(cutoff.clone()),
            };
            let deg = k + bar.degree;
            let tensor = star_eq(ek, &cyc)?;
            let tor = star_tor(ek, &cyc)?;
            for (d, piece) in [(deg, tensor), (deg + 1, tor)] {
                if piece.is_zero() {
                    continue;
                }
                let slot = out.entry(d).or_insert_with(|| EqBarcode::zero(cutoff.clone()));
                *slot = slot.direct_sum(&piece)?;
            }
        }
    }
    Ok(out)
}

/// `f^L = − ⋆_{𝔾𝕆} 1_μ`: births are forgotten, finite bars become
/// `Λ₀/T^ℓ` and rays become `Λ₀`, degree by degree.
pub fn induce(b: &PlainBarcode, cutoff: &Exponent) -> GradedEqBarcode {
    let mut out = GradedEqBarcode::new();
    for bar in &b.bars {
        graded_push(&mut out, bar.degree, bar.length.clone(), cutoff);
    }
    out
}

/// Degree-0 part of [`induce`].
pub fn induce_degree0(b: &PlainBarcode, cutoff: &Exponent) -> EqBarcode {
    induce(b, cutoff).remove(&0).unwrap_or_else(|| EqBarcode::zero(cutoff.clone()))
}

/// Drop degrees whose module vanishes, so graded values compare by content.
pub fn trim(g: &GradedEqBarcode) -> GradedEqBarcode {
    g.iter().filter(|(_, e)| !e.is_zero()).map(|(k, e)| (*k, e.clone())).collect()
}

/// An interval in ℝ of any openness, the input of [`project`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawInterval {
    /// `[a, b)`
    ClosedOpen(Rational, Rational),
    /// `(a, b]`
    OpenClosed(Rational, Rational),
    /// `(a, b)`
    Open(Rational, Rational),
    /// `[a, b]`
    Closed(Rational, Rational),
    /// `[a, ∞)`
    ClosedRay(Rational),
    /// `(a, ∞)`
    OpenRay(Rational),
    /// `(−∞, b)`
    OpenLeftRay(Rational),
    /// `(−∞, b]`
    ClosedLeftRay(Rational),
    Line,
}

/// The projector `− ⋆ K_{[0,∞)}` on interval sheaves `K_I` sitting in
/// `degree`.
///
/// Its stalk at `t` is `RΓ_c(I ∩ (−∞, t])`, which is `K` for a compact
/// segment, `K[−1]` for an open one and zero for half-open or empty sets.
/// Reading off where each case occurs gives the table below.
pub fn project(intervals: &[(RawInterval, i32)]) -> PlainBarcode {
    let mut bars = Vec::new();
    for (iv, degree) in intervals {
        let d = *degree;
        let bar = match iv {
            RawInterval::ClosedOpen(a, b) if a < b => {
                Some(PlainBar { degree: d, birth: a.clone(), length: Exponent::Finite(b - a) })
            }
            RawInterval::Open(a, b) if a < b => {
                Some(PlainBar { degree: d + 1, birth: b.clone(), length: Exponent::Infinite })
            }
            RawInterval::Closed(a, b) if a <= b => {
                Some(PlainBar { degree: d, birth: a.clone(), length: Exponent::Infinite })
            }
            RawInterval::ClosedRay(a) => Some(PlainBar { degree: d, birth: a.clone(), length: Exponent::Infinite }),
            RawInterval::OpenLeftRay(b) => {
                Some(PlainBar { degree: d + 1, birth: b.clone(), length: Exponent::Infinite })
            }
            _ => None,
        };
        bars.extend(bar);
    }
    bars.sort();
    PlainBarcode { bars }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn bar(b: i64, l: Option<i64>) -> PlainBar {
        PlainBar::new(rat(b, 1), l.map_or(Exponent::Infinite, Exponent::int))
    }

    #[test]
    fn rays_add() {
        let a = PlainBarcode::new(alloc::vec![bar(1, None)]).unwrap();
        let b = PlainBarcode::new(alloc::vec![bar(2, None)]).unwrap();
        assert_eq!(star_plain(&a, &b).bars(), &[bar(3, None)]);
    }

    #[test]
    fn unit_law_and_tensor() {
        let inf = Exponent::Infinite;
        let e = EqBarcode::new(alloc::vec![rat(2, 1), rat(1, 3)], 2, inf.clone()).unwrap();
        assert_eq!(star_eq(&e, &EqBarcode::unit(inf.clone())).unwrap(), e);
        let a = EqBarcode::new(alloc::vec![rat(2, 1)], 0, inf.clone()).unwrap();
        let b = EqBarcode::new(alloc::vec![rat(3, 1)], 0, inf.clone()).unwrap();
        assert_eq!(star_eq(&a, &b).unwrap().torsion(), &[rat(2, 1)]);
    }

    #[test]
    fn induction() {
        let inf = Exponent::Infinite;
        let ray = PlainBarcode::new(alloc::vec![bar(5, None)]).unwrap();
        assert_eq!(induce_degree0(&ray, &inf), EqBarcode::unit(inf.clone()));
        let seg = PlainBarcode::new(alloc::vec![bar(0, Some(2))]).unwrap();
        assert_eq!(induce_degree0(&seg, &inf).torsion(), &[rat(2, 1)]);
    }

    #[test]
    fn projector_table() {
        let (a, b) = (rat(1, 1), rat(3, 1));
        let out = project(&[
            (RawInterval::ClosedOpen(a.clone(), b.clone()), 0),
            (RawInterval::OpenClosed(a.clone(), b.clone()), 0),
            (RawInterval::Open(a.clone(), b.clone()), 0),
            (RawInterval::Closed(a.clone(), b.clone()), 0),
        ]);
        assert_eq!(out.bars(), &[bar(1, Some(2)), bar(1, None), bar(3, None).in_degree(1),]);
        assert!(project(&[]).is_empty());
    }

    #[test]
    fn cutoff_turns_long_bars_free() {
        let e = EqBarcode::new(alloc::vec![rat(3, 1), rat(1, 1)], 0, Exponent::int(2)).unwrap();
        assert_eq!((e.torsion(), e.free_rank()), (&[rat(1, 1)][..], 1));
    }
}
