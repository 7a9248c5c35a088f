//! Colimits of directed chains of curved dgas.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::dga::{in_monoid, CurvedDGA, Element};
use super::CurvedError;
use crate::matrix::Matrix;
use crate::novikov::NovikovScalar;

/// `A_0 → A_1 → … → A_n` with `maps[k]: A_k → A_{k+1}` in the column
/// convention (`maps[k]·v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedSystem {
    pub algebras: Vec<CurvedDGA>,
    pub maps: Vec<Matrix>,
}

/// `(⊕ A_k) / (x − φ(x))` with its identification with the terminal
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitPresentation {
    /// `(k, i)`: basis element `i` of `A_k`.
    pub generators: Vec<(usize, usize)>,
    /// One row `g − φ(g)` per generator of every non-terminal algebra.
    pub relations: Matrix,
    /// The colimit, carried by the terminal algebra at its (finest) gapping.
    pub dga: CurvedDGA,
    /// Composite `A_k → colimit` for each `k`.
    pub to_colimit: Vec<Matrix>,
}

fn apply(m: &Matrix, v: &Element) -> Element {
    (0..m.rows())
        .map(|i| v.iter().enumerate().fold(NovikovScalar::zero(m.ring()), |acc, (j, x)| &acc + &(m.get(i, j) * x)))
        .collect()
}

fn is_morphism(phi: &Matrix, a: &CurvedDGA, b: &CurvedDGA) -> bool {
    if phi.rows() != b.dim() || phi.cols() != a.dim() || phi.ring() != b.ring() {
        return false;
    }
    let degrees_ok = (0..b.dim()).all(|i| (0..a.dim()).all(|j| phi.get(i, j).is_zero() || b.degree(i) == a.degree(j)));
    if !degrees_ok || apply(phi, a.unit()) != *b.unit() || apply(phi, a.curvature()) != *b.curvature() {
        return false;
    }
    let images: Vec<Element> = (0..a.dim()).map(|j| apply(phi, &a.basis_vector(j))).collect();
    for j in 0..a.dim() {
        if apply(phi, &a.d(&a.basis_vector(j))) != b.d(&images[j]) {
            return false;
        }
        for k in 0..a.dim() {
            let prod = a.mul(&a.basis_vector(j), &a.basis_vector(k));
            if apply(phi, &prod) != b.mul(&images[j], &images[k]) {
                return false;
            }
        }
    }
    // the target gapping refines the source one
    let mut memo = BTreeMap::new();
    a.gapping().iter().all(|g| in_monoid(g, b.gapping(), &mut memo))
}

pub fn colimit_dga(system: &DirectedSystem) -> Result<ColimitPresentation, CurvedError> {
    let n = system.algebras.len();
    if n == 0 {
        return Err(CurvedError::EmptyFamily);
    }
    if system.maps.len() + 1 != n {
        return Err(CurvedError::Shape(alloc::format!("{} algebras need {} maps", n, n - 1)));
    }
    for (k, phi) in system.maps.iter().enumerate() {
        if !is_morphism(phi, &system.algebras[k], &system.algebras[k + 1]) {
            return Err(CurvedError::NotMorphism(k));
        }
    }
    let terminal = system.algebras[n - 1].clone();
    let ring = terminal.ring().clone();

    let mut to_colimit = alloc::vec![Matrix::identity(terminal.dim(), &ring); n];
    for k in (0..n - 1).rev() {
        to_colimit[k] = to_colimit[k + 1].checked_mul(&system.maps[k]).map_err(|_| CurvedError::RingMismatch)?;
    }

    let mut offsets = Vec::with_capacity(n);
    let mut generators = Vec::new();
    for (k, a) in system.algebras.iter().enumerate() {
        offsets.push(generators.len());
        generators.extend((0..a.dim()).map(|i| (k, i)));
    }
    let mut rows = Vec::new();
    for k in 0..n - 1 {
        for j in 0..system.algebras[k].dim() {
            let mut row = alloc::vec![NovikovScalar::zero(&ring); generators.len()];
            row[offsets[k] + j] = NovikovScalar::one(&ring);
            for i in 0..system.algebras[k + 1].dim() {
                row[offsets[k + 1] + i] = -system.maps[k].get(i, j);
            }
            rows.push(row);
        }
    }
    let relations = if rows.is_empty() {
        Matrix::zeros(0, generators.len(), &ring)
    } else {
        Matrix::from_rows(rows, &ring).expect("uniform rows")
    };
    Ok(ColimitPresentation { generators, relations, dga: terminal, to_colimit })
}

/// Image of an element of `A_k` in the colimit.
pub fn push_forward(p: &ColimitPresentation, k: usize, b: &Element) -> Element {
    apply(&p.to_colimit[k], b)
}
