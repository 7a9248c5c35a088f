use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::CurvedError;
use crate::linalg;
use crate::matrix::Matrix;
use crate::novikov::{Exponent, FieldElement, NovikovScalar, Rational, Ring};

/// Coefficient vector in the fixed basis.
pub type Element = Vec<NovikovScalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

/// A higher operation `m_k` given by its values on basis tensors; only the
/// Maurer–Cartan evaluator uses these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherOperation {
    pub arity: usize,
    pub table: Vec<(Vec<usize>, Element)>,
}

/// Finite free graded algebra over `Λ₀/T^c` with a degree-one derivation
/// whose square vanishes modulo `Λ₀⁺`, and a small degree-two curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedDGA {
    basis: Vec<Generator>,
    unit: Element,
    /// `mult[i][j]` lists `(k, c)` with `g_i·g_j = Σ c·g_k`.
    mult: Vec<Vec<Vec<(usize, NovikovScalar)>>>,
    diff: Matrix,
    curvature: Element,
    gapping: Vec<Rational>,
    ring: Ring,
}

fn shape(msg: &str) -> CurvedError {
    CurvedError::Shape(String::from(msg))
}

/// Whether `e` is a sum of gapping generators.
pub(crate) fn in_monoid(e: &Rational, gens: &[Rational], memo: &mut BTreeMap<Rational, bool>) -> bool {
    if e.is_zero() {
        return true;
    }
    if e.is_negative() {
        return false;
    }
    if let Some(&known) = memo.get(e) {
        return known;
    }
    let ok = gens.iter().filter(|g| g.is_positive() && *g <= e).any(|g| in_monoid(&(e - g), gens, memo));
    memo.insert(e.clone(), ok);
    ok
}

pub(crate) fn check_gapping(gapping: &[Rational], cutoff: &Exponent) -> Result<(), CurvedError> {
    let ok = gapping.first().is_some_and(|g| g.is_zero())
        && gapping.windows(2).all(|w| w[0] < w[1])
        && gapping.iter().all(|g| cutoff.exceeds(g));
    if ok {
        Ok(())
    } else {
        Err(CurvedError::MalformedGapping)
    }
}

pub(crate) fn check_exponents<'a>(
    scalars: impl IntoIterator<Item = &'a NovikovScalar>,
    gapping: &[Rational],
) -> Result<(), CurvedError> {
    let mut memo = BTreeMap::new();
    for s in scalars {
        for (e, _) in s.terms() {
            if !in_monoid(e, gapping, &mut memo) {
                return Err(CurvedError::OffGapping(e.clone()));
            }
        }
    }
    Ok(())
}

impl CurvedDGA {
    /// `mult` lists `(i, j, k, c)` meaning `g_i·g_j ∋ c·g_k`. Without an
    /// explicit `unit` a basis element acting as identity is searched for.
    pub fn new(
        basis: Vec<Generator>,
        mult: &[(usize, usize, usize, NovikovScalar)],
        diff: Matrix,
        curvature: Element,
        gapping: Vec<Rational>,
        unit: Option<Element>,
    ) -> Result<Self, CurvedError> {
        let n = basis.len();
        let ring = diff.ring().clone();
        if diff.rows() != n || diff.cols() != n {
            return Err(shape("differential must be n×n"));
        }
        if curvature.len() != n {
            return Err(shape("curvature length"));
        }
        let mut table: Vec<Vec<Vec<(usize, NovikovScalar)>>> = vec![vec![Vec::new(); n]; n];
        for (i, j, k, c) in mult {
            if *i >= n || *j >= n || *k >= n {
                return Err(shape("multiplication index out of range"));
            }
            if c.ring() != &ring {
                return Err(CurvedError::RingMismatch);
            }
            let slot = &mut table[*i][*j];
            match slot.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, v)) => *v = &*v + c,
                None => slot.push((*k, c.clone())),
            }
        }
        for row in table.iter_mut() {
            for slot in row.iter_mut() {
                slot.retain(|(_, c)| !c.is_zero());
                slot.sort_by_key(|(k, _)| *k);
            }
        }
        let a = CurvedDGA { basis, unit: Vec::new(), mult: table, diff, curvature, gapping, ring };
        let unit = match unit {
            Some(u) => u,
            None => (0..n).map(|u| a.basis_vector(u)).find(|u| a.is_unit(u)).ok_or(CurvedError::NoUnit)?,
        };
        let a = CurvedDGA { unit, ..a };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), CurvedError> {
        let n = self.dim();
        check_gapping(&self.gapping, &self.ring.cutoff)?;
        if self.unit.len() != n || !self.is_unit(&self.unit) {
            return Err(CurvedError::NoUnit);
        }
        if self.curvature.iter().any(|c| c.ring() != &self.ring) || self.unit.iter().any(|c| c.ring() != &self.ring) {
            return Err(CurvedError::RingMismatch);
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.mult[i][j] {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        return Err(CurvedError::Degree(format!("g{}·g{} has a term in g{}", i, j, k)));
                    }
                }
                if !self.diff.get(i, j).is_zero() && self.degree(i) != self.degree(j) + 1 {
                    return Err(CurvedError::Degree(format!("d(g{}) has a term in g{}", j, i)));
                }
            }
        }
        for (k, c) in self.curvature.iter().enumerate() {
            if !c.is_zero() && self.degree(k) != 2 {
                return Err(CurvedError::Degree(String::from("curvature must have degree 2")));
            }
            if !c.residue().is_zero() {
                return Err(CurvedError::CurvatureNotSmall);
            }
        }
        let d2 = self.diff.checked_mul(&self.diff).map_err(|_| shape("differential"))?;
        if d2.entries().iter().any(|s| !s.residue().is_zero()) {
            return Err(CurvedError::DifferentialNotNilpotent);
        }
        for i in 0..n {
            for j in 0..n {
                let (gi, gj) = (self.basis_vector(i), self.basis_vector(j));
                let gij = self.mul(&gi, &gj);
                for k in 0..n {
                    let gk = self.basis_vector(k);
                    if self.mul(&gij, &gk) != self.mul(&gi, &self.mul(&gj, &gk)) {
                        return Err(CurvedError::NotAssociative { triple: (i, j, k) });
                    }
                }
                let lhs = self.d(&gij);
                let mut rhs = self.mul(&self.d(&gi), &gj);
                let second = self.mul(&gi, &self.d(&gj));
                rhs = if self.degree(i) % 2 == 0 { add(&rhs, &second) } else { sub(&rhs, &second) };
                if lhs != rhs {
                    return Err(CurvedError::NotLeibniz { pair: (i, j) });
                }
            }
        }
        let scalars =
            self.mult.iter().flatten().flatten().map(|(_, c)| c).chain(self.diff.entries()).chain(&self.curvature);
        check_exponents(scalars, &self.gapping)
    }

    fn is_unit(&self, u: &Element) -> bool {
        (0..self.dim()).all(|j| {
            let g = self.basis_vector(j);
            self.mul(u, &g) == g && self.mul(&g, u) == g
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gapping(&self) -> &[Rational] {
        &self.gapping
    }

    pub fn diff(&self) -> &Matrix {
        &self.diff
    }

    pub fn curvature(&self) -> &Element {
        &self.curvature
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Nonzero products `(i, j, k, c)`.
    pub fn mult_entries(&self) -> Vec<(usize, usize, usize, NovikovScalar)> {
        let mut out = Vec::new();
        for (i, row) in self.mult.iter().enumerate() {
            for (j, slot) in row.iter().enumerate() {
                out.extend(slot.iter().map(|(k, c)| (i, j, *k, c.clone())));
            }
        }
        out
    }

    pub fn zero(&self) -> Element {
        vec![NovikovScalar::zero(&self.ring); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = NovikovScalar::one(&self.ring);
        v
    }

    /// Whether every nonzero coefficient sits on a basis element of `degree`.
    pub fn is_homogeneous(&self, v: &Element, degree: i32) -> bool {
        v.len() == self.dim() && v.iter().enumerate().all(|(i, c)| c.is_zero() || self.degree(i) == degree)
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                if ab.is_zero() {
                    continue;
                }
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn d(&self, u: &Element) -> Element {
        let mut out = self.zero();
        for (j, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (i, o) in out.iter_mut().enumerate() {
                let c = self.diff.get(i, j);
                if !c.is_zero() {
                    *o = &*o + &(c * a);
                }
            }
        }
        out
    }

    /// Indices of basis elements in `degree`.
    pub fn degree_indices(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == degree).collect()
    }

    /// `d ⊗ κ` from degree `p` to degree `p + 1`, rows indexed by the target.
    pub fn residue_differential(&self, p: i32) -> Vec<Vec<FieldElement>> {
        let (src, dst) = (self.degree_indices(p), self.degree_indices(p + 1));
        dst.iter().map(|&i| src.iter().map(|&j| self.diff.get(i, j).residue()).collect()).collect()
    }
}

pub(crate) fn add(u: &Element, v: &Element) -> Element {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub(crate) fn sub(u: &Element, v: &Element) -> Element {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

fn is_zero(v: &Element) -> bool {
    v.iter().all(NovikovScalar::is_zero)
}

/// `m₀ + d(b) + b·b + Σ_k m_k(b, …, b)`.
pub fn mc_residual(a: &CurvedDGA, b: &Element, higher: &[HigherOperation]) -> Result<Element, CurvedError> {
    if !a.is_homogeneous(b, 1) {
        return Err(CurvedError::Degree(String::from("b must have degree 1")));
    }
    let mut r = add(&add(&a.curvature, &a.d(b)), &a.mul(b, b));
    for op in higher {
        for (inputs, value) in &op.table {
            if inputs.len() != op.arity || value.len() != a.dim() {
                return Err(shape("higher operation table"));
            }
            let mut coeff = NovikovScalar::one(&a.ring);
            for &i in inputs {
                coeff = &coeff * &b[i];
            }
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in value.iter().enumerate() {
                if !c.is_zero() {
                    if a.degree(k) != 2 {
                        return Err(CurvedError::Degree(String::from("m_k(b, …, b) must land in degree 2")));
                    }
                    r[k] = &r[k] + &(&coeff * c);
                }
            }
        }
    }
    Ok(r)
}

/// The first level at which `(d + b)² = 0` cannot be solved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub level: Rational,
    /// Residue-field coefficients of the obstruction on the degree-2 basis
    /// (indices as in `degree_indices(2)`).
    pub class: Vec<FieldElement>,
    /// The partial solution reached below `level`.
    pub partial: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McOutcome {
    Solved(Element),
    Obstructed(ObstructionReport),
}

/// Level cap for infinite cutoffs, where the correction series need not
/// terminate.
const MAX_LEVELS: usize = 512;

/// Energy-by-energy solution of `m₀ + d(b) + b² = 0`.
///
/// At the lowest level `λ` of the current residual its `T^λ` coefficient
/// must be `d₀`-exact in degree 2; the minimal-support preimage `p` updates
/// `b ← b − T^λ p`, which clears level `λ` because every other contribution
/// of the correction has valuation above `λ`.
pub fn mc_solve(a: &CurvedDGA) -> Result<McOutcome, CurvedError> {
    check_gapping(&a.gapping, &a.ring.cutoff)?;
    let (deg1, deg2) = (a.degree_indices(1), a.degree_indices(2));
    let d0 = a.residue_differential(1);
    let mut b = a.zero();
    let mut memo = BTreeMap::new();
    for _ in 0..MAX_LEVELS {
        let r = mc_residual(a, &b, &[])?;
        let level = match r.iter().map(NovikovScalar::valuation).min() {
            None | Some(Exponent::Infinite) => return Ok(McOutcome::Solved(b)),
            Some(Exponent::Finite(v)) => v,
        };
        if !in_monoid(&level, &a.gapping, &mut memo) {
            return Err(CurvedError::OffGapping(level));
        }
        let rhs: Vec<FieldElement> = deg2.iter().map(|&k| r[k].coefficient(&level)).collect();
        match linalg::solve(&d0, &rhs, a.ring.field) {
            Some(p) => {
                for (&j, c) in deg1.iter().zip(&p) {
                    let step = NovikovScalar::monomial(c.clone(), level.clone(), &a.ring);
                    b[j] = &b[j] - &step;
                }
            }
            None => return Ok(McOutcome::Obstructed(ObstructionReport { level, class: rhs, partial: b })),
        }
    }
    Err(CurvedError::Unterminated)
}

/// `g⁻¹` for `g ≡ 1 mod Λ₀⁺` by the geometric series in `1 − g`.
fn inverse_near_unit(a: &CurvedDGA, g: &Element) -> Result<Element, CurvedError> {
    let n = sub(&a.unit, g);
    let mut sum = a.unit.clone();
    let mut power = a.unit.clone();
    for _ in 0..MAX_LEVELS {
        power = a.mul(&power, &n);
        if is_zero(&power) {
            return Ok(sum);
        }
        sum = add(&sum, &power);
    }
    Err(CurvedError::Unterminated)
}

/// `b' = g·b·g⁻¹ − d(g)·g⁻¹` for a degree-0 `g ≡ 1 mod Λ₀⁺`.
pub fn gauge_transform(a: &CurvedDGA, g: &Element, b: &Element) -> Result<Element, CurvedError> {
    if !a.is_homogeneous(g, 0) {
        return Err(CurvedError::NotGaugeElement);
    }
    if g.iter().zip(&a.unit).any(|(x, u)| x.residue() != u.residue()) {
        return Err(CurvedError::NotGaugeElement);
    }
    let gi = inverse_near_unit(a, g)?;
    Ok(sub(&a.mul(&a.mul(g, b), &gi), &a.mul(&a.d(g), &gi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, Field};

    fn gen(name: &str, degree: i32) -> Generator {
        Generator { name: String::from(name), degree }
    }

    /// `⟨1, x, y⟩` with `x·x = xx_coeff·y`, `d(x) = dx·y`, curvature `m0·y`.
    fn fixture(xx: bool, dx: Option<i64>, m0: Option<i64>, cutoff: Exponent) -> CurvedDGA {
        let ring = Ring::new(cutoff, Field::Rational);
        let one = NovikovScalar::one(&ring);
        let mut mult = vec![
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (0, 2, 2, one.clone()),
            (2, 0, 2, one.clone()),
        ];
        if xx {
            mult.push((1, 1, 2, one.clone()));
        }
        let mut diff = Matrix::zeros(3, 3, &ring);
        if let Some(c) = dx {
            diff.set(2, 1, NovikovScalar::t_pow(&rat(c, 1), &ring));
        }
        let mut curv = vec![NovikovScalar::zero(&ring); 3];
        if let Some(c) = m0 {
            curv[2] = NovikovScalar::t_pow(&rat(c, 1), &ring);
        }
        let basis = vec![gen("1", 0), gen("x", 1), gen("y", 2)];
        CurvedDGA::new(basis, &mult, diff, curv, vec![rat(0, 1), rat(1, 1)], None).unwrap()
    }

    #[test]
    fn residual_examples() {
        let a = fixture(true, Some(1), None, Exponent::int(5));
        let ring = a.ring().clone();
        let mut b = a.zero();
        b[1] = -NovikovScalar::t_pow(&rat(1, 1), &ring);
        assert!(is_zero(&mc_residual(&a, &b, &[]).unwrap()));
        b[1] = NovikovScalar::t_pow(&rat(1, 1), &ring);
        let r = mc_residual(&a, &b, &[]).unwrap();
        assert_eq!(r[2], NovikovScalar::monomial(Field::Rational.from_i64(2), rat(2, 1), &ring));
    }

    #[test]
    fn obstruction_is_reported() {
        let a = fixture(false, None, Some(1), Exponent::int(5));
        match mc_solve(&a).unwrap() {
            McOutcome::Obstructed(o) => {
                assert_eq!(o.level, rat(1, 1));
                assert_eq!(o.class, vec![Field::Rational.one()]);
            }
            other => panic!("expected an obstruction, got {:?}", other),
        }
    }

    #[test]
    fn exact_curvature_is_cancelled() {
        // curvature T·y with d(x) = y: b = −T·x
        let a = fixture(false, Some(0), Some(1), Exponent::int(5));
        let McOutcome::Solved(b) = mc_solve(&a).unwrap() else { panic!("solvable") };
        assert_eq!(b[1], -NovikovScalar::t_pow(&rat(1, 1), a.ring()));
    }

    #[test]
    fn rejects_bad_input() {
        let ring = Ring::new(Exponent::int(3), Field::Rational);
        let basis = vec![gen("1", 0)];
        let one = NovikovScalar::one(&ring);
        let ok = CurvedDGA::new(
            basis.clone(),
            &[(0, 0, 0, one.clone())],
            Matrix::zeros(1, 1, &ring),
            vec![NovikovScalar::zero(&ring)],
            vec![rat(0, 1)],
            None,
        );
        assert!(ok.is_ok());
        let bad_gap = CurvedDGA::new(
            basis.clone(),
            &[(0, 0, 0, one)],
            Matrix::zeros(1, 1, &ring),
            vec![NovikovScalar::zero(&ring)],
            vec![rat(1, 1)],
            None,
        );
        assert_eq!(bad_gap, Err(CurvedError::MalformedGapping));
        let no_unit = CurvedDGA::new(
            basis,
            &[],
            Matrix::zeros(1, 1, &ring),
            vec![NovikovScalar::zero(&ring)],
            vec![rat(0, 1)],
            None,
        );
        assert_eq!(no_unit, Err(CurvedError::NoUnit));
    }
}
