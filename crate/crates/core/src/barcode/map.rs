//! Morphisms between equivariant barcodes, their cones, and graded Hom.
//!
//! A [`ModuleMap`] `E → F` is a matrix with one row per summand of `E` and
//! one column per summand of `F`; a generator row vector `x` maps to `x·M`.
//! Entry `(i, j)` between lengths `a` and `b` must satisfy
//! `val ≥ max(0, b − a)` (so that `T^a` still kills the image) and is stored
//! modulo `T^b`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{BarcodeError, EqBarcode};
use crate::matrix::Matrix;
use crate::modcat::{kernel_cokernel, NormalForm};
use crate::novikov::{Exponent, Field, NovikovScalar, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: EqBarcode,
    target: EqBarcode,
    degree: i32,
    entries: Matrix,
}

fn required_valuation(a: &Exponent, b: &Exponent) -> Exponent {
    match (a, b) {
        (Exponent::Finite(a), Exponent::Finite(b)) if b > a => Exponent::Finite(b - a),
        _ => Exponent::zero(),
    }
}

impl ModuleMap {
    /// Validate and reduce a degree-0 map.
    pub fn new(source: EqBarcode, target: EqBarcode, entries: Matrix) -> Result<Self, BarcodeError> {
        Self::with_degree(source, target, 0, entries)
    }

    /// Valuation constraints are only imposed in degree 0.
    pub fn with_degree(
        source: EqBarcode,
        target: EqBarcode,
        degree: i32,
        entries: Matrix,
    ) -> Result<Self, BarcodeError> {
        if source.cutoff() != target.cutoff() {
            return Err(BarcodeError::CutoffMismatch(source.cutoff().clone(), target.cutoff().clone()));
        }
        if &entries.ring().cutoff != source.cutoff() {
            return Err(BarcodeError::CutoffMismatch(entries.ring().cutoff.clone(), source.cutoff().clone()));
        }
        let (n, m) = (source.len(), target.len());
        if (entries.rows(), entries.cols()) != (n, m) {
            return Err(BarcodeError::Shape { expected: (n, m), found: (entries.rows(), entries.cols()) });
        }
        let (sl, tl) = (source.effective_lengths(), target.effective_lengths());
        let mut reduced = entries.clone();
        for i in 0..n {
            for j in 0..m {
                let e = entries.get(i, j).reduce_mod(&tl[j]);
                if degree == 0 && !e.is_zero() {
                    if sl[i].is_finite() && tl[j].is_infinite() {
                        return Err(BarcodeError::TorsionToFree { row: i, col: j });
                    }
                    let required = required_valuation(&sl[i], &tl[j]);
                    if e.valuation() < required {
                        return Err(BarcodeError::Valuation { row: i, col: j, required, found: e.valuation() });
                    }
                }
                reduced.set(i, j, e);
            }
        }
        Ok(ModuleMap { source, target, degree, entries: reduced })
    }

    /// `T^a·id_E`.
    pub fn t_identity(e: &EqBarcode, a: &Rational, field: Field) -> Self {
        let ring = e.ring(field);
        let m = Matrix::diagonal(&alloc::vec![NovikovScalar::t_pow(a, &ring); e.len()], &ring);
        Self::new(e.clone(), e.clone(), m).expect("T^a·id is always a valid endomorphism")
    }

    pub fn identity(e: &EqBarcode, field: Field) -> Self {
        Self::t_identity(e, &Rational::zero(), field)
    }

    pub fn zero(source: &EqBarcode, target: &EqBarcode, field: Field) -> Self {
        let ring = source.ring(field);
        let m = Matrix::zeros(source.len(), target.len(), &ring);
        Self::new(source.clone(), target.clone(), m).expect("zero map is valid")
    }

    pub fn source(&self) -> &EqBarcode {
        &self.source
    }

    pub fn target(&self) -> &EqBarcode {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn field(&self) -> Field {
        self.entries.ring().field
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &ModuleMap, inner: &ModuleMap) -> Result<ModuleMap, BarcodeError> {
        if inner.target != outer.source {
            return Err(BarcodeError::NotComposable);
        }
        let product = inner.entries.checked_mul(&outer.entries).map_err(|_| BarcodeError::NotComposable)?;
        Self::with_degree(inner.source.clone(), outer.target.clone(), inner.degree + outer.degree, product)
    }

    /// Multiply every entry by `T^e`.
    pub fn shift(&self, e: &Rational) -> ModuleMap {
        Self::with_degree(self.source.clone(), self.target.clone(), self.degree, self.entries.shift(e))
            .expect("raising valuations keeps a map valid")
    }

    /// Whether `self = T^e·id`.
    pub fn is_t_identity(&self, e: &Rational) -> bool {
        self.source == self.target && *self == ModuleMap::t_identity(&self.source, e, self.field())
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries)
    }
}

/// Cohomology of the two-term complex `E → F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCohomology {
    /// `H⁻¹ = ker f`
    pub kernel: EqBarcode,
    /// `H⁰ = coker f`
    pub cokernel: EqBarcode,
    /// Rows spanning `ker f` in the summand basis of the source.
    pub kernel_generators: Matrix,
}

impl ConeCohomology {
    pub fn torsion_order(&self) -> Exponent {
        core::cmp::max(self.kernel.torsion_order(), self.cokernel.torsion_order())
    }

    pub fn is_zero(&self) -> bool {
        self.kernel.is_zero() && self.cokernel.is_zero()
    }
}

/// Relation rows `T^{ℓᵢ} eᵢ`. At a finite cutoff free summands are
/// `Λ₀/T^c` and get the relation `T^c`.
fn relations(e: &EqBarcode, ring: &Ring) -> Matrix {
    let cutoff = e.cutoff().clone();
    let mut rows = Vec::new();
    for (i, l) in e.lengths().into_iter().enumerate() {
        let l = match (l, &cutoff) {
            (Exponent::Finite(l), _) => l,
            (Exponent::Infinite, Exponent::Finite(c)) => c.clone(),
            (Exponent::Infinite, Exponent::Infinite) => continue,
        };
        let mut row = alloc::vec![NovikovScalar::zero(ring); e.len()];
        row[i] = NovikovScalar::t_pow(&l, ring);
        rows.push(row);
    }
    let m = Matrix::from_rows(rows, ring).expect("uniform rows");
    if m.rows() == 0 {
        Matrix::zeros(0, e.len(), ring)
    } else {
        m
    }
}

/// Kernel and cokernel of `f`, computed exactly over `Λ₀`.
pub fn cone(f: &ModuleMap) -> ConeCohomology {
    let exact = Ring::exact(f.field());
    let cutoff = f.source.cutoff().clone();
    let fm = f.entries.with_cutoff(&Exponent::Infinite);
    let (ker_nf, coker_nf, kx) = kernel_cokernel(&fm, &relations(&f.source, &exact), &relations(&f.target, &exact));
    let wrap = |nf: &NormalForm| EqBarcode::from_normal_form(nf, cutoff.clone()).expect("positive lengths");
    ConeCohomology { kernel: wrap(&ker_nf), cokernel: wrap(&coker_nf), kernel_generators: kx }
}

/// One nonzero summand pair of `Hom⁰(E, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomGenerator {
    pub source: usize,
    pub target: usize,
    /// Valuation of the distinguished generator `eᵢ ↦ T^v fⱼ`.
    pub valuation: Exponent,
}

/// `Hom⁰` and `Ext¹`; higher Ext vanishes over a valuation ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomModule {
    pub hom: NormalForm,
    pub ext1: NormalForm,
    pub generators: Vec<HomGenerator>,
}

impl fmt::Display for HomModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hom0 {}", self.hom)?;
        write!(f, "ext1 {}", self.ext1)
    }
}

/// Graded `Hom(E, F)` from the resolution `0 → Λ₀ –T^a→ Λ₀ → Λ₀/T^a → 0`
/// of each source summand: `Hom(Λ₀/T^a, C) = ker(T^a | C)` and
/// `Ext¹(Λ₀/T^a, C) = coker(T^a | C)`, both read off [`cone`].
pub fn hom(e: &EqBarcode, f: &EqBarcode, field: Field) -> Result<HomModule, BarcodeError> {
    if e.cutoff() != f.cutoff() {
        return Err(BarcodeError::CutoffMismatch(e.cutoff().clone(), f.cutoff().clone()));
    }
    let cutoff = e.cutoff().clone();
    let mut hom = NormalForm::zero();
    let mut ext1 = NormalForm::zero();
    let mut generators = Vec::new();
    for (i, a) in e.lengths().into_iter().enumerate() {
        for (j, b) in f.lengths().into_iter().enumerate() {
            let target = match &b {
                Exponent::Finite(b) => EqBarcode::new(alloc::vec![b.clone()], 0, cutoff.clone())?,
                Exponent::Infinite => EqBarcode::unit(cutoff.clone()),
            };
            let (piece, ext, valuation) = match &a {
                Exponent::Infinite => (target.normal_form().clone(), NormalForm::zero(), Exponent::zero()),
                Exponent::Finite(a) => {
                    let c = cone(&ModuleMap::t_identity(&target, a, field));
                    let v = c.kernel_generators.min_valuation();
                    (c.kernel.normal_form().clone(), c.cokernel.normal_form().clone(), v)
                }
            };
            if !piece.is_zero() {
                generators.push(HomGenerator { source: i, target: j, valuation });
            }
            hom = hom.direct_sum(&piece);
            ext1 = ext1.direct_sum(&ext);
        }
    }
    Ok(HomModule { hom, ext1, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn cyc(a: i64) -> EqBarcode {
        EqBarcode::new(alloc::vec![rat(a, 1)], 0, Exponent::Infinite).unwrap()
    }

    #[test]
    fn compose_t_powers() {
        let e = cyc(7).direct_sum(&EqBarcode::unit(Exponent::Infinite)).unwrap();
        let f = Field::Rational;
        let ab =
            ModuleMap::compose(&ModuleMap::t_identity(&e, &rat(2, 1), f), &ModuleMap::t_identity(&e, &rat(3, 1), f))
                .unwrap();
        assert!(ab.is_t_identity(&rat(5, 1)));
    }

    #[test]
    fn valuation_constraints() {
        let ring = Ring::exact(Field::Rational);
        let one = Matrix::identity(1, &ring);
        assert!(ModuleMap::new(cyc(2), cyc(5), one.clone()).is_err());
        let t3 = Matrix::diagonal(&[NovikovScalar::t_pow(&rat(3, 1), &ring)], &ring);
        assert!(ModuleMap::new(cyc(2), cyc(5), t3).is_ok());
        assert_eq!(
            ModuleMap::new(cyc(2), EqBarcode::unit(Exponent::Infinite), one.clone()),
            Err(BarcodeError::TorsionToFree { row: 0, col: 0 })
        );
        // stored modulo the target length
        let m = ModuleMap::new(cyc(5), cyc(2), Matrix::diagonal(&[NovikovScalar::t_pow(&rat(2, 1), &ring)], &ring));
        assert!(m.unwrap().is_zero());
    }

    #[test]
    fn cone_of_t_power() {
        for (a, c) in [(1, 3), (3, 3), (5, 3)] {
            let e = cyc(c);
            let cc = cone(&ModuleMap::t_identity(&e, &rat(a, 1), Field::Rational));
            let expect = cyc(a.min(c));
            assert_eq!(cc.kernel, expect);
            assert_eq!(cc.cokernel, expect);
        }
        let id = cone(&ModuleMap::identity(
            &cyc(2).direct_sum(&EqBarcode::unit(Exponent::Infinite)).unwrap(),
            Field::Rational,
        ));
        assert!(id.is_zero());
    }

    #[test]
    fn hom_examples() {
        let f = Field::Rational;
        let h = hom(&cyc(2), &cyc(5), f).unwrap();
        assert_eq!(h.hom, NormalForm::cyclic(rat(2, 1)));
        assert_eq!(h.generators[0].valuation, Exponent::int(3));
        let unit = EqBarcode::unit(Exponent::Infinite);
        let h = hom(&unit, &unit, f).unwrap();
        assert_eq!((h.hom, h.ext1), (NormalForm::free(1), NormalForm::zero()));
        let h = hom(&cyc(3), &cyc(1), f).unwrap();
        assert_eq!(h.ext1, NormalForm::cyclic(rat(1, 1)));
        let h = hom(&cyc(3), &unit, f).unwrap();
        assert!(h.hom.is_zero());
    }
}
