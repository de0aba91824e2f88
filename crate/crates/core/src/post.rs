//! Post Clifford semigroups: a Clifford addition `+` together with a
//! second operation `▷` whose left translations `L_a = a ▷ ·` act by
//! additive endomorphisms.
//!
//! [`check_post`] validates, in order:
//!
//! ```text
//! P1  a ▷ (b + c) = (a ▷ b) + (a ▷ c)
//! P2  (a + (a ▷ b)) ▷ c = a ▷ (b ▷ c)
//! P3  a + (a ▷ b⁰) = b⁰ + (b⁰ ▷ a)
//! P4  L_a restricts to a bijection of the group component H_a
//! ```
//!
//! and flags the table *strong* when additionally
//!
//! ```text
//! P5  a⁰ + (a ▷ b) = a ▷ b
//! ```
//!
//! Every validated table carries the sub-adjacent Clifford product
//! `a ∘ b = a + (a ▷ b)` ([`sub_adjacent`]); the pair `(+, ∘)` is always
//! a dual weak left brace ([`to_brace`]), every brace arises that way
//! ([`from_brace`]), and the two directions invert each other exactly on
//! strong tables. Any table also yields a set-theoretic Yang–Baxter
//! solution ([`ybe_from_post`]).

use crate::brace::DualWeakLeftBrace;
use crate::clifford::CliffordTable;
use crate::rota_baxter::{EnumBudget, EnumError};
use crate::semigroup::{ElementMap, FiniteSemigroup, MapError, NotCliffordError};
use crate::witness::{fmt_code_witness, Witness};
use crate::ybe::YbeMap;
use rayon::prelude::*;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// A validated post Clifford semigroup over indices `0..n`.
#[derive(Debug, Clone)]
pub struct PostTable {
    add: CliffordTable,
    rhd: Vec<usize>,
    strong: bool,
}

impl PostTable {
    pub fn order(&self) -> usize {
        self.add.order()
    }

    /// The additive operation.
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.add(a, b)
    }

    /// The validated additive Clifford table.
    pub fn add_table(&self) -> &CliffordTable {
        &self.add
    }

    /// The second operation `a ▷ b`.
    pub fn rhd(&self, a: usize, b: usize) -> usize {
        self.rhd[a * self.add.order() + b]
    }

    /// `▷` as rows.
    pub fn rhd_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| self.rhd[a * n..(a + 1) * n].to_vec()).collect()
    }

    /// `▷` in row-major order.
    pub fn rhd_flat(&self) -> &[usize] {
        &self.rhd
    }

    /// Whether P5 holds everywhere.
    pub fn is_strong(&self) -> bool {
        self.strong
    }

    /// Smallest `(a, b)` violating P5, if any.
    pub fn strong_failure(&self) -> Option<(usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let w = self.rhd(a, b);
                if self.add.add(self.add.zero(a), w) != w {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The left translation `L_a` as a map.
    pub fn left_map(&self, a: usize) -> ElementMap {
        let n = self.order();
        ElementMap::endo(n, (0..n).map(|b| self.rhd(a, b)).collect())
            .expect("validated table values are in range")
    }
}

/// First failing axiom of [`check_post`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PostFailure {
    /// The `▷` table is not an `n × n` table over the index set.
    Shape(MapError),
    /// `(T, +)` is not Clifford.
    AddNotClifford(NotCliffordError),
    /// P1: some left translation is not additive.
    LeftEndomorphism { witness: (usize, usize, usize) },
    /// P2: translations fail to compose along the sub-adjacent product.
    Composition { witness: (usize, usize, usize) },
    /// P3: idempotent parts do not exchange.
    IdempotentExchange { witness: (usize, usize) },
    /// P4: some `L_a` does not restrict to a bijection of `H_a`;
    /// the witness is `(a, b)` for an escaping image or `(a, b, b')`
    /// for a collision.
    ComponentAction { witness: Witness },
}

impl PostFailure {
    pub fn code(&self) -> String {
        match self {
            PostFailure::Shape(_) => "post-shape".to_string(),
            PostFailure::AddNotClifford(inner) => format!("add-{}", inner.code()),
            PostFailure::LeftEndomorphism { .. } => "P1".to_string(),
            PostFailure::Composition { .. } => "P2".to_string(),
            PostFailure::IdempotentExchange { .. } => "P3".to_string(),
            PostFailure::ComponentAction { .. } => "P4".to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            PostFailure::Shape(MapError::LengthMismatch { len, .. }) => len.into(),
            PostFailure::Shape(MapError::ValueOutOfRange { index, .. }) => index.into(),
            PostFailure::AddNotClifford(ref inner) => inner.witness(),
            PostFailure::LeftEndomorphism { witness } => witness.into(),
            PostFailure::Composition { witness } => witness.into(),
            PostFailure::IdempotentExchange { witness } => witness.into(),
            PostFailure::ComponentAction { witness } => witness,
        }
    }
}

impl fmt::Display for PostFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PostFailure::Shape(inner) => write!(f, "post-shape ({inner})"),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

/// Validates `rhd` (row-major `n × n`) as a post operation over `add`,
/// reporting the first violated axiom with its smallest witness. On
/// success the derived identities `a ▷ a⁰ = a⁰ = a⁰ ▷ a⁰` and
/// `a⁰ ▷ a = a` are asserted.
pub fn check_post(add: &FiniteSemigroup, rhd: &[usize]) -> Result<PostTable, PostFailure> {
    let n = add.order();
    if rhd.len() != n * n {
        return Err(PostFailure::Shape(MapError::LengthMismatch {
            len: rhd.len(),
            expected: n * n,
        }));
    }
    if let Some((index, &value)) = rhd.iter().enumerate().find(|&(_, &v)| v >= n) {
        return Err(PostFailure::Shape(MapError::ValueOutOfRange { index, value, target: n }));
    }
    let ct = add.expect_clifford().map_err(PostFailure::AddNotClifford)?;
    let at = |a: usize, b: usize| rhd[a * n + b];

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(a, ct.add(b, c)) != ct.add(at(a, b), at(a, c)) {
                    return Err(PostFailure::LeftEndomorphism { witness: (a, b, c) });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if at(ct.add(a, at(a, b)), c) != at(a, at(b, c)) {
                    return Err(PostFailure::Composition { witness: (a, b, c) });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let e = ct.zero(b);
            if ct.add(a, at(a, e)) != ct.add(e, at(e, a)) {
                return Err(PostFailure::IdempotentExchange { witness: (a, b) });
            }
        }
    }
    for a in 0..n {
        let members = ct.component_members(a);
        for &b in members {
            if ct.zero(at(a, b)) != ct.zero(a) {
                return Err(PostFailure::ComponentAction { witness: (a, b).into() });
            }
        }
        for (i, &b1) in members.iter().enumerate() {
            for &b2 in &members[i + 1..] {
                if at(a, b1) == at(a, b2) {
                    return Err(PostFailure::ComponentAction { witness: (a, b1, b2).into() });
                }
            }
        }
    }

    let strong = (0..n).all(|a| (0..n).all(|b| ct.add(ct.zero(a), at(a, b)) == at(a, b)));

    for a in 0..n {
        let e = ct.zero(a);
        assert_eq!(at(a, e), e, "a ▷ a⁰ = a⁰");
        assert_eq!(at(e, e), e, "a⁰ ▷ a⁰ = a⁰");
        assert_eq!(at(e, a), a, "a⁰ ▷ a = a");
    }

    Ok(PostTable { add: ct, rhd: rhd.to_vec(), strong })
}

/// The unique `x ∈ H_w` with `w ▷ x = target`; P4 guarantees it exists
/// whenever `target ∈ H_w`.
fn left_preimage(p: &PostTable, w: usize, target: usize) -> usize {
    let mut found = None;
    for &x in p.add_table().component_members(w) {
        if p.rhd(w, x) == target {
            assert!(found.is_none(), "restricted translations are injective");
            found = Some(x);
        }
    }
    found.expect("restricted translations are surjective")
}

/// The sub-adjacent Clifford product `a ∘ b = a + (a ▷ b)`.
///
/// Asserts that `∘` is Clifford with the same idempotents and idempotent
/// parts as `+`, and that the `∘`-inverse of `a` is the `L_a`-preimage of
/// `-a` inside `H_a`.
pub fn sub_adjacent(p: &PostTable) -> CliffordTable {
    let t = p.add_table();
    let n = t.order();
    let circ_sg = FiniteSemigroup::from_fn(n, |a, b| t.add(a, p.rhd(a, b)))
        .expect("values are in range by construction");
    let circ = circ_sg.expect_clifford().expect("the sub-adjacent product is Clifford");
    assert_eq!(t.idempotents(), circ.idempotents(), "E(T,+) = E(T,∘)");
    for a in 0..n {
        assert_eq!(circ.zero(a), t.zero(a), "shared idempotent parts");
        assert_eq!(circ.neg(a), left_preimage(p, a, t.neg(a)), "∘-inverse formula");
    }
    circ
}

/// The dual weak left brace `(+, ∘)` carried by every validated table.
pub fn to_brace(p: &PostTable) -> DualWeakLeftBrace {
    let circ = sub_adjacent(p);
    DualWeakLeftBrace::check(p.add_table().base(), circ.base())
        .expect("the pair (+, sub-adjacent product) is a brace")
}

/// The post operation `a ▷ b = -a + (a ∘ b)` carried by every brace.
/// The result is always strong.
pub fn from_brace(brace: &DualWeakLeftBrace) -> PostTable {
    let n = brace.order();
    let mut rhd = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            rhd.push(brace.lambda(a, b));
        }
    }
    let p = check_post(brace.add_table().base(), &rhd)
        .expect("the lambda maps of a brace form a post operation");
    assert!(p.is_strong(), "brace-induced tables satisfy P5");
    p
}

/// Precondition failure of the brace-direction round trips: converting
/// to a brace and back only recovers `▷` when P5 holds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundtripError {
    NotStrong { witness: (usize, usize) },
}

impl RoundtripError {
    pub fn code(&self) -> &'static str {
        "P5"
    }

    pub fn witness(&self) -> Witness {
        let RoundtripError::NotStrong { witness } = *self;
        witness.into()
    }
}

impl fmt::Display for RoundtripError {
    fmt_code_witness!();
}

/// `from_brace(to_brace(p)) = p`, table-exact; requires a strong table.
pub fn post_brace_roundtrip(p: &PostTable) -> Result<(), RoundtripError> {
    if let Some(witness) = p.strong_failure() {
        return Err(RoundtripError::NotStrong { witness });
    }
    let back = from_brace(&to_brace(p));
    assert!(back.add_table().base().table_eq(p.add_table().base()));
    assert_eq!(back.rhd_flat(), p.rhd_flat(), "strong tables round-trip exactly");
    Ok(())
}

/// `to_brace(from_brace(b)) = b`, table-exact on both operations; holds
/// for every brace.
pub fn brace_post_roundtrip(brace: &DualWeakLeftBrace) {
    let back = to_brace(&from_brace(brace));
    assert!(back.add_table().base().table_eq(brace.add_table().base()));
    assert!(back.circ_table().base().table_eq(brace.circ_table().base()));
}

/// The Yang–Baxter solution of a validated table:
///
/// ```text
/// r(a, b) = (a⁰ + (a ▷ b),  u + (u ▷ (a + (a ▷ b))))
/// ```
///
/// where `u` is the `L_{a▷b}`-preimage of `-(a ▷ b)` in its component.
/// The braid relation is asserted, and on strong tables the result is
/// asserted equal to the brace route.
pub fn ybe_from_post(p: &PostTable) -> YbeMap {
    let t = p.add_table();
    let r = YbeMap::from_fn(t.order(), |a, b| {
        let w = p.rhd(a, b);
        let u = left_preimage(p, w, t.neg(w));
        (t.add(t.zero(a), w), t.add(u, p.rhd(u, t.add(a, w))))
    });
    r.assert_solution("post");
    if p.is_strong() {
        let via_brace = crate::brace::ybe_from_brace(&to_brace(p));
        assert!(r.table_eq(&via_brace), "strong tables agree with the brace route");
    }
    r
}

/// Compares the two formulas for the second output of [`ybe_from_post`]:
/// the preimage form used there and the product form
/// `(a ▷ b)⁻¹ ∘ a ∘ b` through the sub-adjacent operation. Returns the
/// smallest pair where they differ. The two are kept side by side and
/// compared rather than assumed equal; `None` is the expected outcome.
pub fn ybe_second_form_mismatch(p: &PostTable) -> Option<(usize, usize)> {
    let t = p.add_table();
    let circ = sub_adjacent(p);
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            let w = p.rhd(a, b);
            let u = left_preimage(p, w, t.neg(w));
            let preimage_form = t.add(u, p.rhd(u, t.add(a, w)));
            let product_form = circ.add(circ.add(circ.neg(w), a), b);
            if preimage_form != product_form {
                return Some((a, b));
            }
        }
    }
    None
}

struct PostSearch<'a> {
    ct: &'a CliffordTable,
    strong_only: bool,
    nodes: &'a AtomicU64,
    max_nodes: u64,
}

impl PostSearch<'_> {
    /// Whether assigning value `v` to cell `prefix.len()` (row-major)
    /// keeps every axiom instance that is decidable so far satisfied.
    fn consistent(&self, prefix: &[usize], v: usize) -> bool {
        let ct = self.ct;
        let n = ct.order();
        let k = prefix.len();
        let (a, b) = (k / n, k % n);
        let at = |r: usize, c: usize| {
            let i = r * n + c;
            if i == k {
                v
            } else {
                prefix[i]
            }
        };
        let avail = |r: usize, c: usize| r * n + c <= k;

        // Forced cells: a ▷ a⁰ = a⁰ and b⁰ ▷ b = b.
        if b == ct.zero(a) && v != ct.zero(a) {
            return false;
        }
        if ct.is_idempotent(a) && a == ct.zero(b) && v != b {
            return false;
        }
        // P5 cell by cell when only strong tables are wanted.
        if self.strong_only && ct.add(ct.zero(a), v) != v {
            return false;
        }
        // P4: component containment and injectivity along row a.
        if ct.zero(b) == ct.zero(a) {
            if ct.zero(v) != ct.zero(a) {
                return false;
            }
            for c in 0..b {
                if ct.zero(c) == ct.zero(a) && prefix[a * n + c] == v {
                    return false;
                }
            }
        }
        // P1 instances inside row a that involve the new cell.
        for b1 in 0..=b {
            for b2 in 0..=b {
                let s = ct.add(b1, b2);
                if s > b || (b1 != b && b2 != b && s != b) {
                    continue;
                }
                if at(a, s) != ct.add(at(a, b1), at(a, b2)) {
                    return false;
                }
            }
        }
        // P2 instances whose four cells are all decidable. Each instance
        // is tested exactly when its last cell is placed.
        for a1 in 0..n {
            for b1 in 0..n {
                if !avail(a1, b1) {
                    continue;
                }
                let x = ct.add(a1, at(a1, b1));
                for c in 0..n {
                    if !avail(b1, c) || !avail(x, c) {
                        continue;
                    }
                    let y = at(b1, c);
                    if !avail(a1, y) {
                        continue;
                    }
                    let touches = (a1 == a && b1 == b)
                        || (x == a && c == b)
                        || (b1 == a && c == b)
                        || (a1 == a && y == b);
                    if touches && at(x, c) != at(a1, y) {
                        return false;
                    }
                }
            }
        }
        // P3 instances: cells (t, e) and (e, t) for idempotent e.
        for t_el in 0..n {
            for &e in ct.idempotents() {
                if !avail(t_el, e) || !avail(e, t_el) {
                    continue;
                }
                let touches = (t_el == a && e == b) || (e == a && t_el == b);
                if touches && ct.add(t_el, at(t_el, e)) != ct.add(e, at(e, t_el)) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&self, assign: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) -> Result<(), EnumError> {
        let n = self.ct.order();
        if assign.len() == n * n {
            found.push(assign.clone());
            return Ok(());
        }
        for v in 0..n {
            let used = self.nodes.fetch_add(1, Ordering::Relaxed);
            if used >= self.max_nodes {
                return Err(EnumError::NodeBudget { max_nodes: self.max_nodes });
            }
            if self.consistent(assign, v) {
                assign.push(v);
                self.dfs(assign, found)?;
                assign.pop();
            }
        }
        Ok(())
    }
}

/// Exhaustively enumerates all post operations on `carrier`, in
/// lexicographic order of their row-major `▷` tables. With `strong_only`
/// the search additionally pins P5. The search is a
/// constraint-propagating DFS over table cells, parallelized over the
/// first cell's value; output order is deterministic regardless.
pub fn enumerate_post(
    carrier: &CliffordTable,
    strong_only: bool,
    budget: &EnumBudget,
) -> Result<Vec<PostTable>, EnumError> {
    let n = carrier.order();
    if n > budget.max_order {
        return Err(EnumError::OrderBudget { order: n, max_order: budget.max_order });
    }
    let nodes = AtomicU64::new(0);
    let search =
        PostSearch { ct: carrier, strong_only, nodes: &nodes, max_nodes: budget.max_nodes };
    let branches: Result<Vec<Vec<Vec<usize>>>, EnumError> = (0..n)
        .into_par_iter()
        .map(|v0| {
            let mut found = Vec::new();
            let used = nodes.fetch_add(1, Ordering::Relaxed);
            if used >= search.max_nodes {
                return Err(EnumError::NodeBudget { max_nodes: search.max_nodes });
            }
            if search.consistent(&[], v0) {
                let mut assign = vec![v0];
                search.dfs(&mut assign, &mut found)?;
            }
            Ok(found)
        })
        .collect();
    let tables = branches?
        .into_iter()
        .flatten()
        .map(|rhd| {
            let p = check_post(carrier.base(), &rhd)
                .expect("search constraints are exactly the axioms");
            assert!(!strong_only || p.is_strong());
            p
        })
        .collect();
    Ok(tables)
}
