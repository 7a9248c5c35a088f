//! The endomorphism dga of a level-indexed family and the `real`/`bc`
//! correspondence between its Maurer–Cartan elements and twisted complexes.

use alloc::format;
use alloc::vec::Vec;

use super::dga::{CurvedDGA, Element, Generator};
use super::twisted::{tc_totalize, LevelObject, TwistedComplex};
use super::CurvedError;
use crate::matrix::Matrix;
use crate::novikov::{NovikovScalar, Rational};

/// Objects `V_i` with a standard twisted differential `f_st`.
///
/// The dga is `End(⊕ V_i)` with differential `[D, −]`, `D = ⊕ d_i + f_st`.
/// A degree-one `b` corresponds to the twisted complex whose maps are the
/// components of `f_st + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndomorphismFamily {
    standard: TwistedComplex,
    levels: Vec<usize>,
    degrees: Vec<i32>,
    /// `⊕ d_i + f_st` on the total basis.
    total: Matrix,
    /// `f_st` alone.
    standard_maps: Matrix,
}

impl EndomorphismFamily {
    pub fn new(standard: TwistedComplex) -> Result<Self, CurvedError> {
        let total = tc_totalize(&standard);
        if !total.squares_to_zero() {
            return Err(CurvedError::NotSquareZero(usize::MAX));
        }
        let standard_maps = off_diagonal(&total.differential, &total.levels);
        Ok(EndomorphismFamily {
            levels: total.levels,
            degrees: total.degrees,
            total: total.differential,
            standard_maps,
            standard,
        })
    }

    pub fn objects(&self) -> &[LevelObject] {
        self.standard.objects()
    }

    pub fn standard(&self) -> &TwistedComplex {
        &self.standard
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn total_degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn total_differential(&self) -> &Matrix {
        &self.total
    }

    fn check_degree_one(&self, b: &Matrix) -> Result<(), CurvedError> {
        let n = self.dim();
        if b.rows() != n || b.cols() != n {
            return Err(CurvedError::Shape(format!("b must be {}x{}", n, n)));
        }
        for p in 0..n {
            for q in 0..n {
                if !b.get(p, q).is_zero() && self.degrees[p] != self.degrees[q] + 1 {
                    return Err(CurvedError::Degree(format!("b has a term from slot {} to slot {}", q, p)));
                }
            }
        }
        Ok(())
    }

    /// The twisted complex with maps `(f_st + b)_{ij}`.
    pub fn real(&self, b: &Matrix) -> Result<TwistedComplex, CurvedError> {
        self.check_degree_one(b)?;
        let m = self.standard_maps.checked_add(b).map_err(|_| CurvedError::RingMismatch)?;
        let n = self.dim();
        for p in 0..n {
            for q in 0..n {
                if !m.get(p, q).is_zero() && self.levels[p] >= self.levels[q] {
                    return Err(CurvedError::NotOneSided { from: self.levels[q], to: self.levels[p] });
                }
            }
        }
        let starts = self.standard.block_starts();
        let objects = self.objects();
        let mut maps = alloc::collections::BTreeMap::new();
        for i in 0..objects.len() {
            for j in 0..i {
                let rows: Vec<usize> = (starts[j]..starts[j + 1]).collect();
                let cols: Vec<usize> = (starts[i]..starts[i + 1]).collect();
                maps.insert((i, j), m.select(&rows, &cols));
            }
        }
        TwistedComplex::new(objects.to_vec(), maps, self.standard.ring().clone())
    }

    /// `Σ f_ij − f_st`.
    pub fn bc(&self, t: &TwistedComplex) -> Result<Matrix, CurvedError> {
        if t.objects() != self.objects() {
            return Err(CurvedError::ObjectMismatch);
        }
        let total = tc_totalize(t);
        off_diagonal(&total.differential, &total.levels)
            .checked_sub(&self.standard_maps)
            .map_err(|_| CurvedError::RingMismatch)
    }

    /// `[D, b] + b² = Db + bD + b²` for degree-one `b`.
    pub fn mc_residual(&self, b: &Matrix) -> Result<Matrix, CurvedError> {
        self.check_degree_one(b)?;
        let mul = |x: &Matrix, y: &Matrix| x.checked_mul(y).expect("square matrices");
        let s = mul(&self.total, b).checked_add(&mul(b, &self.total)).expect("same shape");
        Ok(s.checked_add(&mul(b, b)).expect("same shape"))
    }

    /// `End(⊕ V_i)` as a [`CurvedDGA`] on the elementary matrices
    /// `E_pq` (index `p·n + q`), flat, with unit `Σ E_pp`.
    pub fn to_dga(&self, gapping: Vec<Rational>) -> Result<CurvedDGA, CurvedError> {
        let n = self.dim();
        let ring = self.total.ring().clone();
        let idx = |p: usize, q: usize| p * n + q;
        let mut basis = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                basis.push(Generator { name: format!("e{}_{}", p, q), degree: self.degrees[p] - self.degrees[q] });
            }
        }
        let one = NovikovScalar::one(&ring);
        let mut mult = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    mult.push((idx(p, q), idx(q, s), idx(p, s), one.clone()));
                }
            }
        }
        // d(E_pq) = D·E_pq − (−1)^{|E_pq|} E_pq·D
        let mut diff = Matrix::zeros(n * n, n * n, &ring);
        for p in 0..n {
            for q in 0..n {
                let col = idx(p, q);
                let odd = (self.degrees[p] - self.degrees[q]).rem_euclid(2) == 1;
                for r in 0..n {
                    let a = self.total.get(r, p);
                    if !a.is_zero() {
                        let at = idx(r, q);
                        diff.set(at, col, diff.get(at, col) + a);
                    }
                    let c = self.total.get(q, r);
                    if !c.is_zero() {
                        let at = idx(p, r);
                        let term = if odd { c.clone() } else { -c };
                        diff.set(at, col, diff.get(at, col) + &term);
                    }
                }
            }
        }
        let mut unit = alloc::vec![NovikovScalar::zero(&ring); n * n];
        for p in 0..n {
            unit[idx(p, p)] = one.clone();
        }
        let curvature = alloc::vec![NovikovScalar::zero(&ring); n * n];
        CurvedDGA::new(basis, &mult, diff, curvature, gapping, Some(unit))
    }

    /// Row-major flattening matching [`Self::to_dga`].
    pub fn flatten(&self, b: &Matrix) -> Element {
        b.entries().to_vec()
    }
}

/// Zero the blocks with row level ≥ column level, keeping the strictly
/// one-sided part.
fn off_diagonal(d: &Matrix, levels: &[usize]) -> Matrix {
    Matrix::from_fn(d.rows(), d.cols(), d.ring(), |p, q| {
        if levels[p] < levels[q] {
            d.get(p, q).clone()
        } else {
            NovikovScalar::zero(d.ring())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curved::{mc_residual, tc_residual};
    use crate::novikov::{rat, Exponent, Field, Ring};
    use alloc::collections::BTreeMap;

    fn family() -> EndomorphismFamily {
        let r = Ring::new(Exponent::int(4), Field::Rational);
        let obj =
            |deg: i32, off: i64| LevelObject::new(alloc::vec![deg], Matrix::zeros(1, 1, &r), rat(off, 1)).unwrap();
        let f10 = Matrix::diagonal(&[NovikovScalar::t_pow(&rat(1, 1), &r)], &r);
        let t = TwistedComplex::new(alloc::vec![obj(2, 0), obj(0, 1)], BTreeMap::from([((1, 0), f10)]), r).unwrap();
        EndomorphismFamily::new(t).unwrap()
    }

    #[test]
    fn zero_is_the_standard_complex() {
        let fam = family();
        let zero = Matrix::zeros(2, 2, fam.total_differential().ring());
        assert_eq!(&fam.real(&zero).unwrap(), fam.standard());
        assert_eq!(fam.bc(fam.standard()).unwrap(), zero);
    }

    #[test]
    fn both_equations_agree() {
        let fam = family();
        let ring = fam.total_differential().ring().clone();
        let mut b = Matrix::zeros(2, 2, &ring);
        b.set(0, 1, NovikovScalar::t_pow(&rat(2, 1), &ring));
        let t = fam.real(&b).unwrap();
        assert_eq!(fam.bc(&t).unwrap(), b);
        let dga = fam.to_dga(alloc::vec![rat(0, 1), rat(1, 1)]).unwrap();
        let via_dga = mc_residual(&dga, &fam.flatten(&b), &[]).unwrap();
        assert_eq!(via_dga, fam.flatten(&fam.mc_residual(&b).unwrap()));
        assert!(tc_residual(&t).values().all(Matrix::is_zero));
        // diagonal components are rejected
        let mut bad = Matrix::zeros(2, 2, &ring);
        bad.set(1, 0, NovikovScalar::t_pow(&rat(1, 1), &ring));
        assert!(fam.real(&bad).is_err());
    }
}
