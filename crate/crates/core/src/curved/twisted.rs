//! Twisted complexes over energy-tagged levels.
//!
//! An element of `V_i` in internal degree `p` has total degree `p + i`. The
//! total differential `D` has diagonal blocks `d_i` and blocks `f_ij` from
//! `V_i` to `V_j` for `i > j`, so `f_ij` raises internal degree by
//! `i − j + 1`. The Maurer–Cartan residual of `(i, j)` is the `D²` block
//! `d_j f_ij + f_ij d_i + Σ_{j<k<i} f_kj f_ik`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::CurvedError;
use crate::barcode::{EqBarcode, GradedEqBarcode};
use crate::matrix::Matrix;
use crate::modcat::kernel_cokernel;
use crate::novikov::{Exponent, NovikovScalar, Rational, Ring};

/// A finite free complex `(V, d)` sitting at an energy offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelObject {
    degrees: Vec<i32>,
    differential: Matrix,
    offset: Rational,
}

impl LevelObject {
    pub fn new(degrees: Vec<i32>, differential: Matrix, offset: Rational) -> Result<Self, CurvedError> {
        let n = degrees.len();
        if differential.rows() != n || differential.cols() != n {
            return Err(CurvedError::Shape(format!("differential must be {}x{}", n, n)));
        }
        for p in 0..n {
            for q in 0..n {
                if !differential.get(p, q).is_zero() && degrees[p] != degrees[q] + 1 {
                    return Err(CurvedError::Degree(format!("d has a term from slot {} to slot {}", q, p)));
                }
            }
        }
        let obj = LevelObject { degrees, differential, offset };
        if !obj.differential.checked_mul(&obj.differential).map_err(|_| CurvedError::RingMismatch)?.is_zero() {
            return Err(CurvedError::NotSquareZero(0));
        }
        Ok(obj)
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn differential(&self) -> &Matrix {
        &self.differential
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    objects: Vec<LevelObject>,
    /// `(i, j) ↦ f_ij: V_i → V_j`, only `i > j` and only nonzero maps.
    maps: BTreeMap<(usize, usize), Matrix>,
    ring: Ring,
}

impl TwistedComplex {
    pub fn new(
        objects: Vec<LevelObject>,
        maps: BTreeMap<(usize, usize), Matrix>,
        ring: Ring,
    ) -> Result<Self, CurvedError> {
        if objects.windows(2).any(|w| w[0].offset >= w[1].offset) {
            return Err(CurvedError::LevelOrder);
        }
        for (idx, o) in objects.iter().enumerate() {
            if o.differential.ring() != &ring {
                return Err(CurvedError::RingMismatch);
            }
            if !o.differential.checked_mul(&o.differential).map_err(|_| CurvedError::RingMismatch)?.is_zero() {
                return Err(CurvedError::NotSquareZero(idx));
            }
        }
        let mut kept = BTreeMap::new();
        for ((i, j), f) in maps {
            if i <= j || i >= objects.len() {
                if f.is_zero() && i < objects.len() && j < objects.len() {
                    continue;
                }
                return Err(CurvedError::NotOneSided { from: i, to: j });
            }
            let (src, dst) = (&objects[i], &objects[j]);
            if f.rows() != dst.dim() || f.cols() != src.dim() {
                return Err(CurvedError::Shape(format!("f_{}{} must be {}x{}", i, j, dst.dim(), src.dim())));
            }
            if f.ring() != &ring {
                return Err(CurvedError::RingMismatch);
            }
            let shift = (i - j) as i32 + 1;
            for p in 0..dst.dim() {
                for q in 0..src.dim() {
                    if !f.get(p, q).is_zero() && dst.degrees[p] != src.degrees[q] + shift {
                        return Err(CurvedError::Degree(format!(
                            "f_{}{} must raise internal degree by {}",
                            i, j, shift
                        )));
                    }
                }
            }
            if !f.is_zero() {
                kept.insert((i, j), f);
            }
        }
        Ok(TwistedComplex { objects, maps: kept, ring })
    }

    pub fn objects(&self) -> &[LevelObject] {
        &self.objects
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.maps
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn map(&self, i: usize, j: usize) -> Matrix {
        self.maps
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.objects[j].dim(), self.objects[i].dim(), &self.ring))
    }

    /// No connecting maps: the complex is the direct sum of its levels.
    pub fn is_direct_sum(&self) -> bool {
        self.maps.is_empty()
    }

    /// Start of each level's block in the total basis.
    pub(crate) fn block_starts(&self) -> Vec<usize> {
        let mut starts = Vec::with_capacity(self.objects.len() + 1);
        let mut at = 0;
        for o in &self.objects {
            starts.push(at);
            at += o.dim();
        }
        starts.push(at);
        starts
    }
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.checked_mul(b).expect("block shapes agree")
}

fn plus(a: &Matrix, b: &Matrix) -> Matrix {
    a.checked_add(b).expect("block shapes agree")
}

/// Residual block for every `i > j`, zero blocks included.
pub fn tc_residual(t: &TwistedComplex) -> BTreeMap<(usize, usize), Matrix> {
    let n = t.objects.len();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..i {
            let f = t.map(i, j);
            let mut r = plus(&mul(&t.objects[j].differential, &f), &mul(&f, &t.objects[i].differential));
            for k in j + 1..i {
                r = plus(&r, &mul(&t.map(k, j), &t.map(i, k)));
            }
            out.insert((i, j), r);
        }
    }
    out
}

/// `⊕ V_i` with its total differential and per-slot level tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalComplex {
    pub differential: Matrix,
    /// Total degree of each slot.
    pub degrees: Vec<i32>,
    /// Level index of each slot, nondecreasing.
    pub levels: Vec<usize>,
    /// Energy offset of each level.
    pub offsets: Vec<Rational>,
}

pub fn tc_totalize(t: &TwistedComplex) -> TotalComplex {
    let starts = t.block_starts();
    let total = *starts.last().expect("at least one entry");
    let mut d = Matrix::zeros(total, total, &t.ring);
    let mut degrees = Vec::with_capacity(total);
    let mut levels = Vec::with_capacity(total);
    let place = |m: &Matrix, r0: usize, c0: usize, d: &mut Matrix| {
        for p in 0..m.rows() {
            for q in 0..m.cols() {
                d.set(r0 + p, c0 + q, m.get(p, q).clone());
            }
        }
    };
    for (i, o) in t.objects.iter().enumerate() {
        place(&o.differential, starts[i], starts[i], &mut d);
        degrees.extend(o.degrees.iter().map(|p| p + i as i32));
        levels.extend(core::iter::repeat_n(i, o.dim()));
    }
    for ((i, j), f) in &t.maps {
        place(f, starts[*j], starts[*i], &mut d);
    }
    TotalComplex { differential: d, degrees, levels, offsets: t.objects.iter().map(|o| o.offset.clone()).collect() }
}

impl TotalComplex {
    pub fn squares_to_zero(&self) -> bool {
        self.differential.checked_mul(&self.differential).expect("square").is_zero()
    }

    fn slots_in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&s| self.degrees[s] == k).collect()
    }

    /// Cohomology per total degree as equivariant barcodes. At a finite
    /// cutoff every slot is `Λ₀/T^c`.
    pub fn cohomology(&self) -> GradedEqBarcode {
        let ring = self.differential.ring();
        let exact = Ring::exact(ring.field);
        let cutoff = ring.cutoff.clone();
        let d = self.differential.with_cutoff(&Exponent::Infinite);
        let truncation = |n: usize| match &cutoff {
            Exponent::Finite(c) => Matrix::diagonal(&alloc::vec![NovikovScalar::t_pow(c, &exact); n], &exact),
            Exponent::Infinite => Matrix::zeros(0, n, &exact),
        };
        let mut out = GradedEqBarcode::new();
        let mut ks: Vec<i32> = self.degrees.clone();
        ks.sort_unstable();
        ks.dedup();
        for k in ks {
            let (prev, here, next) =
                (self.slots_in_degree(k - 1), self.slots_in_degree(k), self.slots_in_degree(k + 1));
            // row convention: x ↦ x·f with f = (d restricted)ᵀ
            let f = d.select(&next, &here).transpose();
            let image = d.select(&here, &prev).transpose();
            let source_rel = if image.rows() == 0 {
                truncation(here.len())
            } else {
                image.vstack(&truncation(here.len())).expect("width")
            };
            let (ker, _, _) = kernel_cokernel(&f, &source_rel, &truncation(next.len()));
            let h = EqBarcode::from_normal_form(&ker, cutoff.clone()).expect("positive lengths");
            if !h.is_zero() {
                out.insert(k, h);
            }
        }
        out
    }
}

/// Recover the twisted complex from a level-tagged total differential.
pub fn sigma_decompose(total: &TotalComplex) -> Result<TwistedComplex, CurvedError> {
    let n = total.degrees.len();
    let d = &total.differential;
    if d.rows() != n || d.cols() != n || total.levels.len() != n {
        return Err(CurvedError::Shape(format!("total complex of size {}", n)));
    }
    if total.levels.windows(2).any(|w| w[0] > w[1]) || total.levels.last().is_some_and(|&l| l >= total.offsets.len()) {
        return Err(CurvedError::LevelOrder);
    }
    for p in 0..n {
        for q in 0..n {
            if !d.get(p, q).is_zero() && total.levels[p] > total.levels[q] {
                return Err(CurvedError::NonTriangular { row_level: total.levels[p], col_level: total.levels[q] });
            }
        }
    }
    let slots = |l: usize| -> Vec<usize> { (0..n).filter(|&s| total.levels[s] == l).collect() };
    let mut objects = Vec::new();
    for (l, off) in total.offsets.iter().enumerate() {
        let s = slots(l);
        let degrees = s.iter().map(|&x| total.degrees[x] - l as i32).collect();
        let obj = LevelObject::new(degrees, d.select(&s, &s), off.clone()).map_err(|e| match e {
            CurvedError::NotSquareZero(_) => CurvedError::NotSquareZero(l),
            e => e,
        })?;
        objects.push(obj);
    }
    let mut maps = BTreeMap::new();
    for i in 0..objects.len() {
        for j in 0..i {
            let f = d.select(&slots(j), &slots(i));
            if !f.is_zero() {
                maps.insert((i, j), f);
            }
        }
    }
    TwistedComplex::new(objects, maps, d.ring().clone())
}
