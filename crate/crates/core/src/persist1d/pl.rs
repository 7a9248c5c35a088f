use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::Persist1dError;
use crate::novikov::Rational;

/// Domain of a piecewise-linear function. The circle has circumference 1
/// and is parametrized by `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Point,
    Interval(Rational, Rational),
    Circle,
}

/// Linear interpolation of `values` at `breakpoints`, closed up cyclically
/// on the circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLFunction {
    base: Base,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PLFunction {
    /// Points must increase strictly. An interval function is given at both
    /// endpoints, a circle function at points of `[0, 1)`, a point function
    /// at a single point.
    pub fn new(base: Base, points: Vec<(Rational, Rational)>) -> Result<Self, Persist1dError> {
        let bad = |s: &str| Err(Persist1dError::Breakpoints(s.into()));
        if points.is_empty() {
            return bad("no points");
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return bad("abscissae must increase strictly");
        }
        match &base {
            Base::Point if points.len() != 1 => return bad("a point function takes exactly one value"),
            Base::Interval(x0, x1) => {
                if x0 >= x1 {
                    return bad("interval must have x0 < x1");
                }
                if &points[0].0 != x0 || &points[points.len() - 1].0 != x1 {
                    return Err(Persist1dError::Breakpoints(format!("values at {} and {} are required", x0, x1)));
                }
            }
            Base::Circle if (points[0].0.is_negative() || points[points.len() - 1].0 >= Rational::one()) => {
                return bad("circle abscissae must lie in [0, 1)");
            }
            _ => {}
        }
        let (breakpoints, values) = points.into_iter().unzip();
        Ok(PLFunction { base, breakpoints, values })
    }

    pub fn constant(base: Base, value: Rational) -> Self {
        let breakpoints = match &base {
            Base::Interval(x0, x1) => alloc::vec![x0.clone(), x1.clone()],
            _ => alloc::vec![Rational::zero()],
        };
        let values = alloc::vec![value; breakpoints.len()];
        PLFunction { base, breakpoints, values }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.breakpoints.iter().zip(&self.values)
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let n = self.len();
        match self.base {
            Base::Point => self.values[0].clone(),
            Base::Interval(..) => {
                let x = x.clamp(&self.breakpoints[0], &self.breakpoints[n - 1]);
                let i = self.breakpoints.partition_point(|b| b <= x);
                if i == n {
                    return self.values[n - 1].clone();
                }
                lerp((&self.breakpoints[i - 1], &self.values[i - 1]), (&self.breakpoints[i], &self.values[i]), x)
            }
            Base::Circle => {
                let x = x - x.floor();
                let i = self.breakpoints.partition_point(|b| b <= &x);
                let one = Rational::one();
                if i == 0 {
                    let left = &self.breakpoints[n - 1] - &one;
                    lerp((&left, &self.values[n - 1]), (&self.breakpoints[0], &self.values[0]), &x)
                } else if i == n {
                    let right = &self.breakpoints[0] + &one;
                    lerp((&self.breakpoints[n - 1], &self.values[n - 1]), (&right, &self.values[0]), &x)
                } else {
                    lerp((&self.breakpoints[i - 1], &self.values[i - 1]), (&self.breakpoints[i], &self.values[i]), &x)
                }
            }
        }
    }

    fn combine(
        &self,
        other: &PLFunction,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, Persist1dError> {
        if self.base != other.base {
            return Err(Persist1dError::BaseMismatch);
        }
        let xs: BTreeSet<&Rational> = self.breakpoints.iter().chain(&other.breakpoints).collect();
        let values = xs.iter().map(|x| op(&self.evaluate(x), &other.evaluate(x))).collect();
        Ok(PLFunction { base: self.base.clone(), breakpoints: xs.into_iter().cloned().collect(), values })
    }

    pub fn add(&self, other: &PLFunction) -> Result<Self, Persist1dError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PLFunction) -> Result<Self, Persist1dError> {
        self.combine(other, |a, b| a - b)
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v += c);
        out
    }

    pub fn min_value(&self) -> &Rational {
        self.values.iter().min().expect("nonempty")
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("nonempty")
    }

    /// `max − min`.
    pub fn oscillation(&self) -> Rational {
        self.max_value() - self.min_value()
    }

    /// Neighbouring vertex pairs, one per linear piece.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        match self.base {
            Base::Point => Vec::new(),
            Base::Interval(..) => (1..n).map(|i| (i - 1, i)).collect(),
            Base::Circle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    fn neighbours(&self, i: usize) -> Vec<usize> {
        let n = self.len();
        match self.base {
            Base::Point => Vec::new(),
            Base::Interval(..) => [i.checked_sub(1), Some(i + 1).filter(|&j| j < n)].into_iter().flatten().collect(),
            Base::Circle => alloc::vec![(i + n - 1) % n, (i + 1) % n],
        }
    }

    fn has_flat_piece(&self) -> bool {
        self.edges().iter().any(|&(a, b)| self.values[a] == self.values[b])
    }

    /// Vertices that are strict local extrema. Interval endpoints count when
    /// their single neighbour is on one side, so a monotone function has two.
    pub fn critical_points(&self) -> Vec<usize> {
        if self.base == Base::Point {
            return alloc::vec![0];
        }
        (0..self.len())
            .filter(|&i| {
                let v = &self.values[i];
                let nb = self.neighbours(i);
                nb.iter().all(|&j| &self.values[j] > v) || nb.iter().all(|&j| &self.values[j] < v)
            })
            .collect()
    }

    /// No linear piece is flat and no two local extrema share a value.
    pub fn is_generic(&self) -> bool {
        if self.base == Base::Point {
            return true;
        }
        if self.has_flat_piece() {
            return false;
        }
        let crit = self.critical_points();
        let vals: BTreeSet<&Rational> = crit.iter().map(|&i| &self.values[i]).collect();
        vals.len() == crit.len()
    }

    /// Add `ε·(i+1)/(n+1)` at vertex `i`, with `ε = magnitude/2^k` for the
    /// least `k` making all vertex values distinct. Only finitely many `ε`
    /// fail, so the search stops. The sup-norm change is below `magnitude`.
    pub fn perturb(&self, magnitude: &Rational) -> Result<Self, Persist1dError> {
        if !magnitude.is_positive() {
            return Err(Persist1dError::BadMagnitude);
        }
        if self.base == Base::Point {
            return Ok(self.clone());
        }
        let n = self.len();
        let denom = Rational::from_integer((n as i64 + 1).into());
        let mut eps = magnitude.clone();
        loop {
            let mut out = self.clone();
            for (i, v) in out.values.iter_mut().enumerate() {
                *v += &eps * Rational::from_integer((i as i64 + 1).into()) / &denom;
            }
            let distinct: BTreeSet<&Rational> = out.values.iter().collect();
            if distinct.len() == n && (n > 1 || self.base != Base::Circle) {
                return Ok(out);
            }
            if n == 1 {
                // a one-vertex circle is constant whatever we add
                return Ok(out);
            }
            eps /= Rational::from_integer(2.into());
        }
    }
}

fn lerp(a: (&Rational, &Rational), b: (&Rational, &Rational), x: &Rational) -> Rational {
    a.1 + (b.1 - a.1) * (x - a.0) / (b.0 - a.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::rat;

    fn circle(vals: &[(i64, i64)]) -> PLFunction {
        let n = vals.len() as i64;
        let pts = vals.iter().enumerate().map(|(i, &(p, q))| (rat(i as i64, n), rat(p, q))).collect();
        PLFunction::new(Base::Circle, pts).unwrap()
    }

    #[test]
    fn evaluation_wraps() {
        let f = circle(&[(0, 1), (1, 1), (1, 5), (3, 2)]);
        assert_eq!(f.evaluate(&rat(1, 8)), rat(1, 2));
        assert_eq!(f.evaluate(&rat(7, 8)), rat(3, 4));
        assert_eq!(f.evaluate(&rat(-1, 8)), rat(3, 4));
        assert_eq!(f.oscillation(), rat(3, 2));
        assert_eq!(f.critical_points(), alloc::vec![0, 1, 2, 3]);
    }

    #[test]
    fn sums_refine_breakpoints() {
        let f = circle(&[(0, 1), (1, 1)]);
        let g = PLFunction::new(Base::Circle, alloc::vec![(rat(1, 4), rat(1, 1))]).unwrap();
        let s = f.add(&g).unwrap();
        assert_eq!(s.breakpoints(), &[rat(0, 1), rat(1, 4), rat(1, 2)]);
        assert_eq!(s.values(), &[rat(1, 1), rat(3, 2), rat(2, 1)]);
        let i = PLFunction::constant(Base::Interval(rat(0, 1), rat(1, 1)), rat(0, 1));
        assert_eq!(f.add(&i), Err(Persist1dError::BaseMismatch));
    }

    #[test]
    fn genericity_and_perturbation() {
        assert!(circle(&[(0, 1), (1, 1), (1, 5), (3, 2)]).is_generic());
        let tied = circle(&[(0, 1), (1, 1), (0, 1), (1, 1)]);
        assert!(!tied.is_generic());
        let p = tied.perturb(&rat(1, 100)).unwrap();
        assert!(p.is_generic());
        assert!(p.sub(&tied).unwrap().max_value() < &rat(1, 100));
        assert!(!PLFunction::constant(Base::Circle, rat(0, 1)).is_generic());
        let bad = PLFunction::new(Base::Interval(rat(0, 1), rat(1, 1)), alloc::vec![(rat(0, 1), rat(0, 1))]);
        assert!(bad.is_err());
    }
}
