//! Set-theoretic Yang–Baxter maps on a finite carrier.
//!
//! A [`YbeMap`] is a map `r : X × X → X × X` stored as two dense
//! component tables. The solution test is the braid relation
//!
//! ```text
//! (r × id)(id × r)(r × id) = (id × r)(r × id)(id × r)
//! ```
//!
//! checked exhaustively over all `n³` triples; both sides are palindromic
//! sequences, so the application order convention does not affect the
//! test. Every construction route in this crate (brace, post, relative,
//! braided) funnels its candidate solution through this checker.

use crate::semigroup::TableError;
use std::fmt;

/// A candidate Yang–Baxter map: `r(a,b) = (out1[a][b], out2[a][b])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeMap {
    order: usize,
    out1: Vec<usize>,
    out2: Vec<usize>,
}

impl YbeMap {
    pub fn from_rows(out1: &[Vec<usize>], out2: &[Vec<usize>]) -> Result<Self, TableError> {
        // Reuse the semigroup shape validation: both components are
        // square tables over the same index set.
        let t1 = crate::semigroup::FiniteSemigroup::from_rows(out1)?;
        let t2 = crate::semigroup::FiniteSemigroup::from_rows(out2)?;
        if t1.order() != t2.order() {
            return Err(TableError::RaggedRow { row: 0, len: t2.order(), order: t1.order() });
        }
        let order = t1.order();
        let flat = |rows: &[Vec<usize>]| rows.iter().flatten().copied().collect();
        Ok(YbeMap { order, out1: flat(out1), out2: flat(out2) })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let mut out1 = Vec::with_capacity(order * order);
        let mut out2 = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (x, y) = f(a, b);
                assert!(x < order && y < order, "components must stay in range");
                out1.push(x);
                out2.push(y);
            }
        }
        YbeMap { order, out1, out2 }
    }

    /// The flip `r(a,b) = (b,a)`, the canonical trivial solution.
    pub fn flip(order: usize) -> Self {
        Self::from_fn(order, |a, b| (b, a))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let i = a * self.order + b;
        (self.out1[i], self.out2[i])
    }

    pub fn out1_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.out1[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    pub fn out2_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.out2[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Component-table equality (the only notion of equality that
    /// matters for comparing construction routes).
    pub fn table_eq(&self, other: &YbeMap) -> bool {
        self.order == other.order && self.out1 == other.out1 && self.out2 == other.out2
    }

    /// Smallest triple violating the braid relation, if any.
    pub fn braid_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.apply(a, b);
            (x, y, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (x, y) = self.apply(b, c);
            (a, x, y)
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = (a, b, c);
                    if r12(r23(r12(t))) != r23(r12(r23(t))) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_solution(&self) -> bool {
        self.braid_failure().is_none()
    }

    /// Panics with the offending triple unless the braid relation holds;
    /// used by the construction routes whose output is a solution by
    /// theorem, where a failure means a bug.
    pub fn assert_solution(&self, route: &str) {
        if let Some(w) = self.braid_failure() {
            panic!(
                "braid relation must hold for the {route} route, violated at ({},{},{})",
                w.0, w.1, w.2
            );
        }
    }
}

impl fmt::Display for YbeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_rows = |rows: Vec<Vec<usize>>| {
            rows.iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        write!(f, "out1={} out2={}", fmt_rows(self.out1_rows()), fmt_rows(self.out2_rows()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_and_identity_are_solutions() {
        assert!(YbeMap::flip(4).is_solution());
        assert!(YbeMap::from_fn(3, |a, b| (a, b)).is_solution());
    }

    #[test]
    fn broken_map_reports_smallest_triple() {
        // r(a,b) = (b, a+b) over Z2 is not a solution; the two sides
        // first disagree at (0,0,1).
        let r = YbeMap::from_fn(2, |a, b| (b, (a + b) % 2));
        assert_eq!(r.braid_failure(), Some((0, 0, 1)));
    }

    #[test]
    fn shape_validation_rejects_mismatched_tables() {
        assert!(YbeMap::from_rows(&[vec![0, 1], vec![1, 0]], &[vec![0]]).is_err());
        assert!(YbeMap::from_rows(&[vec![2, 0], vec![0, 0]], &[vec![0, 0], vec![0, 0]]).is_err());
    }
}
