//! Dense Cayley tables and the classification ladder.
//!
//! A [`FiniteSemigroup`] is just a total binary operation on `{0..n-1}`;
//! nothing is assumed about it until [`FiniteSemigroup::classify`] runs.
//! Classification walks the ladder
//!
//! ```text
//! NotAssociative → Semigroup → Inverse → Clifford
//! ```
//!
//! and returns the strongest class that holds together with the smallest
//! witness violating the next-stronger axiom. The Clifford outcome hands
//! back a fully validated [`CliffordTable`].

use crate::clifford::CliffordTable;
use crate::witness::Witness;
use std::fmt;
use thiserror::Error;

/// Largest supported carrier; tables are dense so anything bigger is a
/// sign the caller wants a different tool.
pub const MAX_ORDER: usize = 255;

/// A binary operation on `{0..order-1}` stored as a dense row-major table.
///
/// Construction validates only the shape (square, entries in range);
/// associativity and everything above it is established by
/// [`classify`](Self::classify). Optional element labels are carried for
/// display purposes and never affect semantics.
#[derive(Debug, Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Shape errors raised when building a [`FiniteSemigroup`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("empty table")]
    Empty,
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("row {row} has {len} entries, expected {order}")]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry ({row},{col}) = {value} is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("{got} labels supplied for order {order}")]
    LabelCountMismatch { got: usize, order: usize },
}

impl FiniteSemigroup {
    /// Builds from nested rows, validating shape and entry ranges.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let order = rows.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        if order > MAX_ORDER {
            return Err(TableError::OrderTooLarge(order));
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(TableError::RaggedRow { row: r, len: row.len(), order });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(TableError::EntryOutOfRange { row: r, col: c, value: v, order });
                }
                table.push(v);
            }
        }
        Ok(FiniteSemigroup { order, table, labels: None })
    }

    /// Builds from a flat row-major table of length `order * order`.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::Empty);
        }
        if order > MAX_ORDER {
            return Err(TableError::OrderTooLarge(order));
        }
        if table.len() != order * order {
            return Err(TableError::RaggedRow { row: 0, len: table.len(), order: order * order });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(TableError::EntryOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
        }
        Ok(FiniteSemigroup { order, table, labels: None })
    }

    /// Builds the table of a function of two arguments.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let mut rows = Vec::with_capacity(order);
        for a in 0..order {
            rows.push((0..order).map(|b| f(a, b)).collect());
        }
        Self::from_rows(&rows)
    }

    /// Attaches display labels (one per element).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, TableError> {
        if labels.len() != self.order {
            return Err(TableError::LabelCountMismatch { got: labels.len(), order: self.order });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The product of `a` and `b`. Panics if either index is out of range.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The table as nested rows (used by serialization and displays).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// True when the two operations are identical entry-for-entry.
    /// Labels are ignored.
    pub fn table_eq(&self, other: &FiniteSemigroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// Smallest `(a,b,c)` with `(a+b)+c != a+(b+c)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.add(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Smallest `(a,b)` with `a+b != b+a`, if any.
    pub fn commutativity_failure(&self) -> Option<(usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_failure().is_none()
    }

    /// Sorted list of idempotent elements.
    pub fn idempotent_elements(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.add(e, e) == e).collect()
    }

    /// Identity element, if the table has one.
    pub fn identity_element(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.add(e, x) == x && self.add(x, e) == x))
    }

    /// Walks the classification ladder; see module docs.
    pub fn classify(&self) -> Classification {
        if let Some(w) = self.associativity_failure() {
            return Classification::NotAssociative { witness: w };
        }
        let n = self.order;
        // Regularity: every a needs some x with a + x + a = a.
        for a in 0..n {
            if !(0..n).any(|x| self.add(self.add(a, x), a) == a) {
                return Classification::Semigroup {
                    obstruction: InverseObstruction::NotRegular { element: a },
                };
            }
        }
        // Idempotents must commute pairwise for inverses to be unique.
        let idems = self.idempotent_elements();
        for (i, &e) in idems.iter().enumerate() {
            for &f in &idems[i + 1..] {
                if self.add(e, f) != self.add(f, e) {
                    return Classification::Semigroup {
                        obstruction: InverseObstruction::NoncommutingIdempotents { e, f },
                    };
                }
            }
        }
        // Regular + commuting idempotents makes the von Neumann inverse
        // unique; compute it and hard-check uniqueness.
        let mut neg = Vec::with_capacity(n);
        for a in 0..n {
            let inverses: Vec<usize> = (0..n)
                .filter(|&x| {
                    self.add(self.add(a, x), a) == a && self.add(self.add(x, a), x) == x
                })
                .collect();
            assert_eq!(
                inverses.len(),
                1,
                "regular table with commuting idempotents must have unique inverses (element {a} has {})",
                inverses.len()
            );
            neg.push(inverses[0]);
        }
        // Clifford: the two idempotent parts of every element agree.
        for a in 0..n {
            if self.add(neg[a], a) != self.add(a, neg[a]) {
                return Classification::Inverse { witness: a, neg };
            }
        }
        Classification::Clifford(Box::new(CliffordTable::assemble(self.clone(), neg)))
    }

    /// Classifies and demands the Clifford outcome.
    pub fn expect_clifford(&self) -> Result<CliffordTable, NotCliffordError> {
        match self.classify() {
            Classification::Clifford(ct) => Ok(*ct),
            Classification::NotAssociative { witness } => {
                Err(NotCliffordError::NotAssociative { witness })
            }
            Classification::Semigroup { obstruction } => match obstruction {
                InverseObstruction::NotRegular { element } => {
                    Err(NotCliffordError::NotRegular { witness: element })
                }
                InverseObstruction::NoncommutingIdempotents { e, f } => {
                    Err(NotCliffordError::NoncommutingIdempotents { e, f })
                }
            },
            Classification::Inverse { witness, .. } => {
                Err(NotCliffordError::IdempotentPartsDiffer { witness })
            }
        }
    }

    /// Direct product; pairs `(x,y)` are indexed `x * other.order() + y`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let n = self.order;
        let m = other.order;
        let sg = FiniteSemigroup::from_fn(n * m, |p, q| {
            let (x1, y1) = (p / m, p % m);
            let (x2, y2) = (q / m, q % m);
            self.add(x1, x2) * m + other.add(y1, y2)
        })
        .expect("product of valid tables is valid");
        let labels = (0..n * m).map(|p| format!("({},{})", p / m, p % m)).collect();
        sg.with_labels(labels).expect("one label per element")
    }

    /// Same carrier with the arguments swapped.
    pub fn opposite(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(self.order, |a, b| self.add(b, a))
            .expect("opposite of valid table is valid")
    }

    /// Per-element invariants preserved by isomorphism, used to prune the
    /// search in [`are_isomorphic`].
    fn element_profile(&self, a: usize) -> ElementProfile {
        let n = self.order;
        let idempotent = self.add(a, a) == a;
        let central = (0..n).all(|x| self.add(a, x) == self.add(x, a));
        // Index and period of the monogenic subsemigroup {a, 2a, 3a, ..}.
        let mut seen = vec![usize::MAX; n];
        let mut p = a;
        let mut step = 1usize;
        let (index, period);
        loop {
            if seen[p] != usize::MAX {
                index = seen[p];
                period = step - seen[p];
                break;
            }
            seen[p] = step;
            p = self.add(p, a);
            step += 1;
        }
        ElementProfile { idempotent, central, index, period }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct ElementProfile {
    idempotent: bool,
    central: bool,
    index: usize,
    period: usize,
}

/// Result of the classification ladder.
#[derive(Debug, Clone)]
pub enum Classification {
    /// Not even a semigroup; `witness` breaks associativity.
    NotAssociative { witness: (usize, usize, usize) },
    /// Associative but not an inverse semigroup.
    Semigroup { obstruction: InverseObstruction },
    /// Inverse but not Clifford: `witness` has `-a+a != a-a`.
    /// `neg` carries the (unique) von Neumann inverses.
    Inverse { witness: usize, neg: Vec<usize> },
    /// Fully validated Clifford semigroup.
    Clifford(Box<CliffordTable>),
}

impl Classification {
    /// Short class name used in CLI output.
    pub fn class_name(&self) -> &'static str {
        match self {
            Classification::NotAssociative { .. } => "not-associative",
            Classification::Semigroup { .. } => "semigroup",
            Classification::Inverse { .. } => "inverse",
            Classification::Clifford(_) => "clifford",
        }
    }

    pub fn is_clifford(&self) -> bool {
        matches!(self, Classification::Clifford(_))
    }
}

/// Why an associative table fails to be an inverse semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseObstruction {
    NotRegular { element: usize },
    NoncommutingIdempotents { e: usize, f: usize },
}

/// Failure modes of [`FiniteSemigroup::expect_clifford`], rendered in the
/// `<axiom> witness=(..)` shape shared by all validators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotCliffordError {
    NotAssociative { witness: (usize, usize, usize) },
    NotRegular { witness: usize },
    NoncommutingIdempotents { e: usize, f: usize },
    IdempotentPartsDiffer { witness: usize },
}

impl NotCliffordError {
    pub fn code(&self) -> &'static str {
        match self {
            NotCliffordError::NotAssociative { .. } => "assoc",
            NotCliffordError::NotRegular { .. } => "regular",
            NotCliffordError::NoncommutingIdempotents { .. } => "idem-comm",
            NotCliffordError::IdempotentPartsDiffer { .. } => "clifford",
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            NotCliffordError::NotAssociative { witness } => witness.into(),
            NotCliffordError::NotRegular { witness } => witness.into(),
            NotCliffordError::NoncommutingIdempotents { e, f } => (e, f).into(),
            NotCliffordError::IdempotentPartsDiffer { witness } => witness.into(),
        }
    }
}

impl fmt::Display for NotCliffordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness={}", self.code(), self.witness())
    }
}

/// A total map between two index sets, the common currency for
/// operators, homomorphisms, and projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementMap {
    source: usize,
    target: usize,
    map: Vec<usize>,
}

/// Shape errors raised when building an [`ElementMap`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map has {len} entries, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("map sends {index} to {value}, out of range for target order {target}")]
    ValueOutOfRange { index: usize, value: usize, target: usize },
}

impl ElementMap {
    pub fn new(source: usize, target: usize, map: Vec<usize>) -> Result<Self, MapError> {
        if map.len() != source {
            return Err(MapError::LengthMismatch { len: map.len(), expected: source });
        }
        for (i, &v) in map.iter().enumerate() {
            if v >= target {
                return Err(MapError::ValueOutOfRange { index: i, value: v, target });
            }
        }
        Ok(ElementMap { source, target, map })
    }

    /// Endomorphism-shaped map (same source and target order).
    pub fn endo(order: usize, map: Vec<usize>) -> Result<Self, MapError> {
        Self::new(order, order, map)
    }

    pub fn identity(order: usize) -> Self {
        ElementMap { source: order, target: order, map: (0..order).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn source_order(&self) -> usize {
        self.source
    }

    pub fn target_order(&self) -> usize {
        self.target
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `first`: `x ↦ self(first(x))`.
    pub fn compose(&self, first: &ElementMap) -> ElementMap {
        assert_eq!(first.target, self.source, "composition orders must match");
        ElementMap {
            source: first.source,
            target: self.target,
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let mut seen = vec![false; self.target];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<ElementMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.source];
        for (x, &v) in self.map.iter().enumerate() {
            inv[v] = x;
        }
        Some(ElementMap { source: self.target, target: self.source, map: inv })
    }
}

impl fmt::Display for ElementMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Smallest `(a,b)` with `f(a+b) != f(a)+f(b)`, if any.
///
/// Panics if the map's orders do not match the tables.
pub fn homomorphism_failure(
    f: &ElementMap,
    src: &FiniteSemigroup,
    dst: &FiniteSemigroup,
) -> Option<(usize, usize)> {
    assert_eq!(f.source_order(), src.order(), "map source must match table");
    assert_eq!(f.target_order(), dst.order(), "map target must match table");
    let n = src.order();
    for a in 0..n {
        for b in 0..n {
            if f.apply(src.add(a, b)) != dst.add(f.apply(a), f.apply(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_homomorphism(f: &ElementMap, src: &FiniteSemigroup, dst: &FiniteSemigroup) -> bool {
    homomorphism_failure(f, src, dst).is_none()
}

pub fn is_endomorphism(f: &ElementMap, sg: &FiniteSemigroup) -> bool {
    is_homomorphism(f, sg, sg)
}

pub fn is_isomorphism(f: &ElementMap, src: &FiniteSemigroup, dst: &FiniteSemigroup) -> bool {
    f.is_bijective() && is_homomorphism(f, src, dst)
}

pub fn is_automorphism(f: &ElementMap, sg: &FiniteSemigroup) -> bool {
    is_isomorphism(f, sg, sg)
}

/// Searches for an isomorphism, returning the lexicographically smallest
/// assignment `[f(0), f(1), ..]` when one exists.
///
/// Candidates are pruned by per-element invariants (idempotency,
/// centrality, monogenic index and period) before a straightforward
/// backtracking search; trying target elements in ascending order makes
/// the first solution found the lexicographically smallest one.
pub fn are_isomorphic(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Option<ElementMap> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    let pa: Vec<ElementProfile> = (0..n).map(|x| a.element_profile(x)).collect();
    let pb: Vec<ElementProfile> = (0..n).map(|x| b.element_profile(x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &pa, &pb, &mut assignment, &mut used, 0) {
        return Some(
            ElementMap::new(n, n, assignment).expect("search produces a valid bijection"),
        );
    }
    None
}

fn assign(
    a: &FiniteSemigroup,
    b: &FiniteSemigroup,
    pa: &[ElementProfile],
    pb: &[ElementProfile],
    assignment: &mut [usize],
    used: &mut [bool],
    k: usize,
) -> bool {
    let n = a.order();
    if k == n {
        return true;
    }
    'candidates: for v in 0..n {
        if used[v] || pa[k] != pb[v] {
            continue;
        }
        assignment[k] = v;
        used[v] = true;
        // Check every product whose operands and result are all assigned.
        for x in 0..=k {
            for y in 0..=k {
                let s = a.add(x, y);
                if s <= k && b.add(assignment[x], assignment[y]) != assignment[s] {
                    assignment[k] = usize::MAX;
                    used[v] = false;
                    continue 'candidates;
                }
            }
        }
        if assign(a, b, pa, pb, assignment, used, k + 1) {
            return true;
        }
        assignment[k] = usize::MAX;
        used[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    fn left_zero2() -> FiniteSemigroup {
        FiniteSemigroup::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(matches!(FiniteSemigroup::from_rows(&[]), Err(TableError::Empty)));
        assert!(matches!(
            FiniteSemigroup::from_rows(&[vec![0, 1], vec![0]]),
            Err(TableError::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            FiniteSemigroup::from_rows(&[vec![0, 2], vec![1, 0]]),
            Err(TableError::EntryOutOfRange { row: 0, col: 1, value: 2, .. })
        ));
    }

    #[test]
    fn classify_walks_the_ladder() {
        // (a-b) mod 3 is not associative; smallest witness is (0,0,1).
        let sub3 = FiniteSemigroup::from_fn(3, |a, b| (3 + a - b) % 3).unwrap();
        match sub3.classify() {
            Classification::NotAssociative { witness } => assert_eq!(witness, (0, 0, 1)),
            other => panic!("expected NotAssociative, got {}", other.class_name()),
        }

        // Left-zero is a semigroup whose idempotents do not commute.
        match left_zero2().classify() {
            Classification::Semigroup {
                obstruction: InverseObstruction::NoncommutingIdempotents { e, f },
            } => assert_eq!((e, f), (0, 1)),
            other => panic!("expected Semigroup, got {}", other.class_name()),
        }

        // Groups are Clifford.
        assert!(z(4).classify().is_clifford());
    }

    #[test]
    fn brandt_semigroup_is_inverse_but_not_clifford() {
        // Five-element Brandt semigroup: pairs (i,j) over {1,2} plus zero.
        // Index 0 is the zero; (i,j)(k,l) = (i,l) when j == k, else zero.
        let pairs = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let idx = |p: (usize, usize)| 1 + pairs.iter().position(|&q| q == p).unwrap();
        let b2 = FiniteSemigroup::from_fn(5, |x, y| {
            if x == 0 || y == 0 {
                return 0;
            }
            let (i, j) = pairs[x - 1];
            let (k, l) = pairs[y - 1];
            if j == k {
                idx((i, l))
            } else {
                0
            }
        })
        .unwrap();
        match b2.classify() {
            Classification::Inverse { witness, .. } => {
                // (1,2) is the smallest element with -a+a != a-a.
                assert_eq!(witness, idx((1, 2)));
            }
            other => panic!("expected Inverse, got {}", other.class_name()),
        }
    }

    #[test]
    fn products_and_opposites() {
        let p = z(2).direct_product(&z(3));
        assert_eq!(p.order(), 6);
        assert!(p.classify().is_clifford());
        let lz = left_zero2();
        let rz = lz.opposite();
        assert_eq!(rz.add(0, 1), 1); // right-zero
    }

    #[test]
    fn isomorphism_search_finds_and_rejects() {
        // Z6 and Z2 x Z3 are isomorphic.
        let iso = are_isomorphic(&z(6), &z(2).direct_product(&z(3))).expect("must exist");
        assert!(is_isomorphism(&iso, &z(6), &z(2).direct_product(&z(3))));
        // Z4 and the Klein four-group are not.
        let klein = z(2).direct_product(&z(2));
        assert!(are_isomorphic(&z(4), &klein).is_none());
        // Smallest map is returned deterministically.
        let auto = are_isomorphic(&z(3), &z(3)).unwrap();
        assert_eq!(auto.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn hom_checks_report_smallest_witness() {
        let f = ElementMap::endo(3, vec![0, 2, 1]).unwrap();
        assert!(is_automorphism(&f, &z(3)));
        let g = ElementMap::endo(3, vec![1, 1, 1]).unwrap();
        assert_eq!(homomorphism_failure(&g, &z(3), &z(3)), Some((0, 0)));
    }

    #[test]
    fn map_plumbing() {
        let f = ElementMap::endo(3, vec![1, 2, 0]).unwrap();
        let finv = f.inverse().unwrap();
        assert_eq!(finv.compose(&f).as_slice(), &[0, 1, 2]);
        assert!(!ElementMap::endo(3, vec![0, 0, 1]).unwrap().is_bijective());
        assert_eq!(f.to_string(), "1,2,0");
    }
}
