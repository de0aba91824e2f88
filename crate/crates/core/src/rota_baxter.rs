//! Rota–Baxter operators of weight `+1` and `-1` on Clifford semigroups:
//! verification, exhaustive enumeration, a family of constructions, the
//! induced second operation `∘_R`, and the kernel/image structure suite.
//!
//! Weight `+1` operators satisfy
//!
//! ```text
//! R(a) + R(b) = R(a + R(a) + b - R(a))       (RB1)
//! a + R(a)⁰   = a                            (RB2)
//! ```
//!
//! while weight `-1` operators replace the first law with
//! `L(a) + L(b) = L(L(a) + b - L(a) + a)`. An operator is *strong* when
//! it fixes every idempotent. Each validated operator additionally gets a
//! battery of derived identities asserted; for weight `-1` the battery
//! runs through the flip `a ↦ L(-a)`, which is a weight-`+1` operator
//! exactly when `L` has weight `-1`.

use crate::brace::DualWeakLeftBrace;
use crate::clifford::{
    quotient, CliffordTable, NormalSubsemigroup, RestrictError, SubClifford,
};
use crate::semigroup::{
    is_automorphism, is_endomorphism, is_isomorphism, ElementMap, FiniteSemigroup, MapError,
};
use crate::witness::{fmt_code_witness, Witness};
use rayon::prelude::*;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Operator weight: `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Plus,
    Minus,
}

impl Weight {
    pub fn as_i8(self) -> i8 {
        match self {
            Weight::Plus => 1,
            Weight::Minus => -1,
        }
    }

    pub fn from_i8(w: i8) -> Option<Weight> {
        match w {
            1 => Some(Weight::Plus),
            -1 => Some(Weight::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// A validated Rota–Baxter operator together with its carrier.
#[derive(Debug, Clone)]
pub struct RbOperator {
    carrier: CliffordTable,
    map: ElementMap,
    weight: Weight,
    strong: bool,
}

impl RbOperator {
    pub fn carrier(&self) -> &CliffordTable {
        &self.carrier
    }

    pub fn map(&self) -> &ElementMap {
        &self.map
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// Whether the operator fixes every idempotent.
    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map.apply(a)
    }
}

/// First failing axiom of [`check_rb`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RbFailure {
    /// The candidate map is not an endomap of the carrier's index set.
    Shape(MapError),
    /// RB1, the composition law; the witness is the offending pair.
    Composition { witness: (usize, usize) },
    /// RB2, `a + R(a)⁰ = a`; the witness is the offending element.
    IdempotentPart { witness: usize },
}

impl RbFailure {
    pub fn code(&self) -> &'static str {
        match self {
            RbFailure::Shape(_) => "rb-shape",
            RbFailure::Composition { .. } => "RB1",
            RbFailure::IdempotentPart { .. } => "RB2",
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            RbFailure::Shape(_) => Witness::One(0),
            RbFailure::Composition { witness } => witness.into(),
            RbFailure::IdempotentPart { witness } => witness.into(),
        }
    }
}

impl fmt::Display for RbFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RbFailure::Shape(inner) => write!(f, "rb-shape ({inner})"),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

/// Smallest axiom violation of `map` as a weight-`weight` operator, or
/// `None` when both axioms hold. RB1 is scanned before RB2.
fn axiom_failure(ct: &CliffordTable, map: &[usize], weight: Weight) -> Option<RbFailure> {
    let n = ct.order();
    for a in 0..n {
        for b in 0..n {
            let lhs = ct.add(map[a], map[b]);
            let arg = rb1_argument(ct, map, weight, a, b);
            if lhs != map[arg] {
                return Some(RbFailure::Composition { witness: (a, b) });
            }
        }
    }
    (0..n)
        .find(|&a| ct.add(a, ct.zero(map[a])) != a)
        .map(|a| RbFailure::IdempotentPart { witness: a })
}

/// The inner argument of RB1 for the given weight.
#[inline]
fn rb1_argument(ct: &CliffordTable, map: &[usize], weight: Weight, a: usize, b: usize) -> usize {
    match weight {
        // a + R(a) + b - R(a)
        Weight::Plus => ct.sub(ct.add(ct.add(a, map[a]), b), map[a]),
        // L(a) + b - L(a) + a
        Weight::Minus => ct.add(ct.sub(ct.add(map[a], b), map[a]), a),
    }
}

fn is_strong_map(ct: &CliffordTable, map: &[usize]) -> bool {
    ct.idempotents().iter().all(|&e| map[e] == e)
}

/// Validates `map` as a Rota–Baxter operator of the given weight,
/// reporting the smallest witness of the first violated axiom. On
/// success the derived identity battery is asserted.
pub fn check_rb(
    carrier: &CliffordTable,
    map: &ElementMap,
    weight: Weight,
) -> Result<RbOperator, RbFailure> {
    let n = carrier.order();
    if map.source_order() != n || map.target_order() != n {
        return Err(RbFailure::Shape(MapError::LengthMismatch {
            len: map.as_slice().len(),
            expected: n,
        }));
    }
    let m = map.as_slice();
    if let Some(failure) = axiom_failure(carrier, m, weight) {
        return Err(failure);
    }
    match weight {
        Weight::Plus => assert_derived_plus(carrier, m),
        Weight::Minus => {
            // The flip a ↦ L(-a) must be a weight +1 operator; run the
            // battery through it.
            let flipped: Vec<usize> = (0..n).map(|a| m[carrier.neg(a)]).collect();
            assert!(
                axiom_failure(carrier, &flipped, Weight::Plus).is_none(),
                "flip of a weight -1 operator must have weight +1"
            );
            assert_derived_plus(carrier, &flipped);
        }
    }
    Ok(RbOperator {
        carrier: carrier.clone(),
        map: map.clone(),
        weight,
        strong: is_strong_map(carrier, m),
    })
}

/// Identities every weight +1 operator satisfies; violations would
/// contradict the axioms just verified.
fn assert_derived_plus(ct: &CliffordTable, r: &[usize]) {
    let n = ct.order();
    for a in 0..n {
        assert_eq!(r[ct.zero(a)], ct.zero(r[a]), "R(a⁰) = R(a)⁰");
        assert_eq!(
            ct.add(r[a], r[ct.neg(a)]),
            r[ct.sub(ct.sub(ct.add(a, r[a]), a), r[a])],
            "R(a) + R(-a) = R(a + R(a) - a - R(a))"
        );
        assert_eq!(
            ct.add(r[a], r[r[a]]),
            r[ct.add(a, r[a])],
            "R(a) + R(R(a)) = R(a + R(a))"
        );
        assert_eq!(
            ct.neg(r[a]),
            r[ct.add(ct.sub(ct.neg(r[a]), a), r[a])],
            "-R(a) = R(-R(a) - a + R(a))"
        );
        assert_eq!(
            ct.add(ct.zero(a), ct.zero(r[a])),
            ct.zero(a),
            "a⁰ + R(a)⁰ = a⁰"
        );
        for b in 0..n {
            assert_eq!(
                ct.add(ct.neg(r[a]), r[ct.sub(ct.add(r[a], b), r[a])]),
                r[ct.add(ct.add(ct.sub(ct.neg(r[a]), a), r[a]), b)],
                "-R(a) + R(R(a) + b - R(a)) = R(-R(a) - a + R(a) + b)"
            );
            if ct.is_idempotent(r[a]) {
                assert_eq!(
                    r[ct.add(a, b)],
                    ct.add(r[a], r[b]),
                    "R(a) idempotent forces R(a + b) = R(a) + R(b)"
                );
            }
        }
    }
    let as_map = ElementMap::endo(n, r.to_vec()).expect("validated shape");
    if is_automorphism(&as_map, ct.base()) {
        for a in 0..n {
            let c = r[ct.add(ct.zero(a), r[a])];
            assert!(ct.is_central(c), "automorphism operators centralize R(a⁰ + R(a))");
        }
    }
}

/// Budget for exhaustive enumeration. `max_order` rejects carriers
/// outright; `max_nodes` bounds the number of search-tree extensions.
/// The environment variables `CLIFFBRAID_MAX_ORDER` and
/// `CLIFFBRAID_MAX_NODES` override the defaults in [`EnumBudget::from_env`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_order: usize,
    pub max_nodes: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_order: 10, max_nodes: 100_000_000 }
    }
}

impl EnumBudget {
    /// Defaults, overridden by `CLIFFBRAID_MAX_ORDER` /
    /// `CLIFFBRAID_MAX_NODES` when set to parseable values.
    pub fn from_env() -> Self {
        let mut budget = EnumBudget::default();
        if let Some(v) = std::env::var("CLIFFBRAID_MAX_ORDER").ok().and_then(|s| s.parse().ok()) {
            budget.max_order = v;
        }
        if let Some(v) = std::env::var("CLIFFBRAID_MAX_NODES").ok().and_then(|s| s.parse().ok()) {
            budget.max_nodes = v;
        }
        budget
    }
}

/// Enumeration aborted by the budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("carrier order {order} exceeds enumeration budget {max_order}")]
    OrderBudget { order: usize, max_order: usize },
    #[error("enumeration exceeded node budget {max_nodes}")]
    NodeBudget { max_nodes: u64 },
}

struct Search<'a> {
    ct: &'a CliffordTable,
    weight: Weight,
    strong_only: bool,
    nodes: &'a AtomicU64,
    max_nodes: u64,
}

impl Search<'_> {
    /// Whether assigning value `v` at position `prefix.len()` keeps every
    /// axiom instance decidable so far satisfied.
    fn consistent(&self, prefix: &[usize], v: usize) -> bool {
        let ct = self.ct;
        let k = prefix.len();
        if ct.add(k, ct.zero(v)) != k {
            return false;
        }
        if self.strong_only && ct.is_idempotent(k) && v != k {
            return false;
        }
        let at = |i: usize| if i == k { v } else { prefix[i] };
        for a in 0..=k {
            for b in 0..=k {
                let arg = match self.weight {
                    Weight::Plus => ct.sub(ct.add(ct.add(a, at(a)), b), at(a)),
                    Weight::Minus => ct.add(ct.sub(ct.add(at(a), b), at(a)), a),
                };
                if arg > k || (a != k && b != k && arg != k) {
                    continue;
                }
                if ct.add(at(a), at(b)) != at(arg) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&self, assign: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) -> Result<(), EnumError> {
        let n = self.ct.order();
        if assign.len() == n {
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

/// Exhaustively enumerates all Rota–Baxter operators of the given weight
/// on `carrier`, in lexicographic order of their value sequences. With
/// `strong_only` the search additionally pins every idempotent. The
/// search is a constraint-propagating DFS, parallelized over the choice
/// of the first value; output order is deterministic regardless.
pub fn enumerate_rb(
    carrier: &CliffordTable,
    weight: Weight,
    strong_only: bool,
    budget: &EnumBudget,
) -> Result<Vec<RbOperator>, EnumError> {
    let n = carrier.order();
    if n > budget.max_order {
        return Err(EnumError::OrderBudget { order: n, max_order: budget.max_order });
    }
    let nodes = AtomicU64::new(0);
    let search = Search {
        ct: carrier,
        weight,
        strong_only,
        nodes: &nodes,
        max_nodes: budget.max_nodes,
    };
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
    let ops = branches?
        .into_iter()
        .flatten()
        .map(|m| {
            let map = ElementMap::endo(n, m).expect("search yields in-range values");
            let op = check_rb(carrier, &map, weight)
                .expect("search constraints are exactly the axioms");
            assert!(!strong_only || op.is_strong());
            op
        })
        .collect();
    Ok(ops)
}

/// Which factor of a factorization input failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorPart {
    U,
    V,
    T,
}

impl fmt::Display for FactorPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorPart::U => write!(f, "U"),
            FactorPart::V => write!(f, "V"),
            FactorPart::T => write!(f, "T"),
        }
    }
}

/// Violated hypothesis of an operator construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    /// The construction needs an operator of the other weight.
    WrongWeight { expected: Weight },
    /// A parameter element index is out of range.
    ElementOutOfRange { element: usize, order: usize },
    /// A supplied map has the wrong source/target orders.
    MapShape { expected: usize, found: usize },
    /// The twisting map is not an automorphism of the carrier.
    NotAutomorphism { witness: Witness },
    /// `n`-fold repetition must satisfy `n(a+b) = nb + na`.
    MultipleReversal { witness: (usize, usize) },
    /// The multiple `n` must be positive.
    ZeroMultiple,
    /// The required identity element is missing: `witness` is an element
    /// moved by the candidate identity.
    MissingIdentity { witness: usize },
    /// `-b - x + b + x` must be central; witness `(x, y)` shows the
    /// non-commuting pair.
    ConjugationCenter { witness: (usize, usize) },
    /// The carrier must be commutative.
    NotCommutative { witness: (usize, usize) },
    /// Translation requires the second parameter to be the negation of
    /// the first; witness is `(a, b)` as supplied.
    TranslationNegation { witness: (usize, usize) },
    /// A factor is not a Clifford subsemigroup.
    NotSubsemigroup { part: FactorPart, inner: RestrictError },
    /// Some element has no (or several) factorizations over the parts.
    FactorizationNotUnique { element: usize, count: usize },
    /// Elements of U and V must commute.
    NotCommutingParts { witness: (usize, usize) },
    /// `L(v)` must commute with every element of T; witness `(v, t)`.
    LCommutation { witness: (usize, usize) },
    /// The inner operator on V is not a weight +1 operator there.
    InnerOperator(Box<RbFailure>),
}

impl ConstructError {
    pub fn code(&self) -> &'static str {
        match self {
            ConstructError::WrongWeight { .. } => "weight",
            ConstructError::ElementOutOfRange { .. } => "range",
            ConstructError::MapShape { .. } => "map-shape",
            ConstructError::NotAutomorphism { .. } => "phi-auto",
            ConstructError::MultipleReversal { .. } => "mult-reverse",
            ConstructError::ZeroMultiple => "mult-zero",
            ConstructError::MissingIdentity { .. } => "identity",
            ConstructError::ConjugationCenter { .. } => "conj-center",
            ConstructError::NotCommutative { .. } => "commutative",
            ConstructError::TranslationNegation { .. } => "trans-neg",
            ConstructError::NotSubsemigroup { .. } => "fact-sub",
            ConstructError::FactorizationNotUnique { .. } => "fact-unique",
            ConstructError::NotCommutingParts { .. } => "uvt-comm",
            ConstructError::LCommutation { .. } => "uvt-lcomm",
            ConstructError::InnerOperator(_) => "uvt-inner",
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            ConstructError::WrongWeight { .. } | ConstructError::ZeroMultiple => Witness::One(0),
            ConstructError::ElementOutOfRange { element, .. } => element.into(),
            ConstructError::MapShape { expected, found } => (expected, found).into(),
            ConstructError::NotAutomorphism { witness } => witness,
            ConstructError::MultipleReversal { witness } => witness.into(),
            ConstructError::MissingIdentity { witness } => witness.into(),
            ConstructError::ConjugationCenter { witness } => witness.into(),
            ConstructError::NotCommutative { witness } => witness.into(),
            ConstructError::TranslationNegation { witness } => witness.into(),
            ConstructError::NotSubsemigroup { ref inner, .. } => inner.witness(),
            ConstructError::FactorizationNotUnique { element, .. } => element.into(),
            ConstructError::NotCommutingParts { witness } => witness.into(),
            ConstructError::LCommutation { witness } => witness.into(),
            ConstructError::InnerOperator(ref inner) => inner.witness(),
        }
    }
}

impl fmt::Display for ConstructError {
    fmt_code_witness!();
}

fn twisted_map(rb: &RbOperator, phi: &ElementMap, phi_inv: &ElementMap) -> Vec<usize> {
    (0..rb.order()).map(|a| phi_inv.apply(rb.apply(phi.apply(a)))).collect()
}

/// Conjugates an operator by an automorphism: `a ↦ φ⁻¹(R(φ(a)))`. Works
/// for either weight and preserves strength.
pub fn phi_twist(rb: &RbOperator, phi: &ElementMap) -> Result<RbOperator, ConstructError> {
    let n = rb.order();
    if phi.source_order() != n || phi.target_order() != n {
        return Err(ConstructError::MapShape { expected: n, found: phi.source_order() });
    }
    if !phi.is_bijective() {
        let missing = (0..n).find(|v| !phi.as_slice().contains(v)).unwrap_or(0);
        return Err(ConstructError::NotAutomorphism { witness: Witness::One(missing) });
    }
    if let Some(w) =
        crate::semigroup::homomorphism_failure(phi, rb.carrier().base(), rb.carrier().base())
    {
        return Err(ConstructError::NotAutomorphism { witness: w.into() });
    }
    let phi_inv = phi.inverse().expect("bijective");
    let map = ElementMap::endo(n, twisted_map(rb, phi, &phi_inv)).expect("in range");
    let out = check_rb(rb.carrier(), &map, rb.weight())
        .expect("twist by an automorphism preserves the axioms");
    assert_eq!(out.is_strong(), rb.is_strong(), "twisting preserves strength");
    Ok(out)
}

/// The reflection construction: for weight +1, `a ↦ -a + R(-a)`; for
/// weight -1, `a ↦ a + L(-a)`. Same weight out; strength carries
/// forward (but a non-strong operator may still reflect to a strong
/// one).
pub fn tilde(rb: &RbOperator) -> RbOperator {
    let ct = rb.carrier();
    let n = rb.order();
    let m: Vec<usize> = match rb.weight() {
        Weight::Plus => (0..n).map(|a| ct.add(ct.neg(a), rb.apply(ct.neg(a)))).collect(),
        Weight::Minus => (0..n).map(|a| ct.add(a, rb.apply(ct.neg(a)))).collect(),
    };
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, rb.weight()).expect("reflection preserves the axioms");
    if rb.is_strong() {
        assert!(out.is_strong(), "reflection preserves strength");
    }
    out
}

/// `a ↦ na`; a weight +1 operator exactly when `n(a+b) = nb + na` for
/// all `a, b`, in which case it is strong.
pub fn n_multiple(ct: &CliffordTable, n: u32) -> Result<RbOperator, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroMultiple);
    }
    let order = ct.order();
    let multiple = |a: usize| {
        let mut acc = a;
        for _ in 1..n {
            acc = ct.add(acc, a);
        }
        acc
    };
    for a in 0..order {
        for b in 0..order {
            if multiple(ct.add(a, b)) != ct.add(multiple(b), multiple(a)) {
                return Err(ConstructError::MultipleReversal { witness: (a, b) });
            }
        }
    }
    let map = ElementMap::endo(order, (0..order).map(multiple).collect()).expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("reversal identity suffices");
    assert!(out.is_strong(), "repetition operators are strong");
    Ok(out)
}

/// `x ↦ -b - x + b`; a weight +1 operator exactly when `b⁰` is an
/// identity element and every `-b - x + b + x` is central. Strong.
pub fn conjugation(ct: &CliffordTable, b: usize) -> Result<RbOperator, ConstructError> {
    let n = ct.order();
    if b >= n {
        return Err(ConstructError::ElementOutOfRange { element: b, order: n });
    }
    let e = ct.zero(b);
    for x in 0..n {
        if ct.add(x, e) != x || ct.add(e, x) != x {
            return Err(ConstructError::MissingIdentity { witness: x });
        }
    }
    for x in 0..n {
        let c = ct.add(ct.add(ct.sub(ct.neg(b), x), b), x);
        for y in 0..n {
            if ct.add(c, y) != ct.add(y, c) {
                return Err(ConstructError::ConjugationCenter { witness: (x, y) });
            }
        }
    }
    let m: Vec<usize> = (0..n).map(|x| ct.add(ct.sub(ct.neg(b), x), b)).collect();
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("conjugation hypotheses suffice");
    assert!(out.is_strong(), "conjugation operators are strong");
    Ok(out)
}

/// `x ↦ a + x + b`; a weight +1 operator exactly when the carrier is a
/// commutative monoid with identity `a⁰` and `b = -a`, in which case the
/// operator is the identity map (and strong).
pub fn translation(ct: &CliffordTable, a: usize, b: usize) -> Result<RbOperator, ConstructError> {
    let n = ct.order();
    for e in [a, b] {
        if e >= n {
            return Err(ConstructError::ElementOutOfRange { element: e, order: n });
        }
    }
    if let Some(witness) = ct.base().commutativity_failure() {
        return Err(ConstructError::NotCommutative { witness });
    }
    let id = ct.zero(a);
    for x in 0..n {
        if ct.add(x, id) != x {
            return Err(ConstructError::MissingIdentity { witness: x });
        }
    }
    if b != ct.neg(a) {
        return Err(ConstructError::TranslationNegation { witness: (a, b) });
    }
    let m: Vec<usize> = (0..n).map(|x| ct.add(ct.add(a, x), b)).collect();
    assert!(m.iter().enumerate().all(|(x, &y)| x == y), "translation collapses to the identity");
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("identity map is an operator here");
    assert!(out.is_strong());
    Ok(out)
}

/// `a ↦ R(-a)` turns a weight +1 operator into a weight -1 operator;
/// strength is preserved.
pub fn weight_flip_neg(rb: &RbOperator) -> Result<RbOperator, ConstructError> {
    if rb.weight() != Weight::Plus {
        return Err(ConstructError::WrongWeight { expected: Weight::Plus });
    }
    let ct = rb.carrier();
    let n = rb.order();
    let m: Vec<usize> = (0..n).map(|a| rb.apply(ct.neg(a))).collect();
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, Weight::Minus).expect("negated argument flips the weight");
    assert_eq!(out.is_strong(), rb.is_strong());
    Ok(out)
}

/// `Φ(R): a ↦ a + R(a)` turns a weight +1 operator into a weight -1
/// operator; strength is preserved.
pub fn weight_phi(rb: &RbOperator) -> Result<RbOperator, ConstructError> {
    if rb.weight() != Weight::Plus {
        return Err(ConstructError::WrongWeight { expected: Weight::Plus });
    }
    let ct = rb.carrier();
    let n = rb.order();
    let map =
        ElementMap::endo(n, (0..n).map(|a| ct.add(a, rb.apply(a))).collect()).expect("in range");
    let out = check_rb(ct, &map, Weight::Minus).expect("a + R(a) has weight -1");
    assert!(!rb.is_strong() || out.is_strong(), "strength carries over");
    Ok(out)
}

/// `Ψ(L): a ↦ -a + L(a)` turns a weight -1 operator into a weight +1
/// operator; strength is preserved.
pub fn weight_psi(rb: &RbOperator) -> Result<RbOperator, ConstructError> {
    if rb.weight() != Weight::Minus {
        return Err(ConstructError::WrongWeight { expected: Weight::Minus });
    }
    let ct = rb.carrier();
    let n = rb.order();
    let map = ElementMap::endo(n, (0..n).map(|a| ct.add(ct.neg(a), rb.apply(a))).collect())
        .expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("-a + L(a) has weight +1");
    assert!(!rb.is_strong() || out.is_strong(), "strength carries over");
    Ok(out)
}

fn restrict_part(
    ct: &CliffordTable,
    part: FactorPart,
    members: &[usize],
) -> Result<SubClifford, ConstructError> {
    ct.restrict(members).map_err(|inner| ConstructError::NotSubsemigroup { part, inner })
}

/// Unique-factorization table: `parts[s] = Some(combo)` where `combo`
/// lists one chosen member per factor. Errors if any element of the
/// ambient carrier has a factorization count other than one.
fn unique_factorization(
    ct: &CliffordTable,
    factors: &[&[usize]],
) -> Result<Vec<Vec<usize>>, ConstructError> {
    let n = ct.order();
    let mut counts = vec![0usize; n];
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut combos = vec![Vec::new()];
    for factor in factors {
        let mut next = Vec::new();
        for combo in &combos {
            for &x in *factor {
                let mut c = combo.clone();
                c.push(x);
                next.push(c);
            }
        }
        combos = next;
    }
    for combo in combos {
        let s = combo[1..].iter().fold(combo[0], |acc, &x| ct.add(acc, x));
        counts[s] += 1;
        if counts[s] == 1 {
            parts[s] = combo;
        }
    }
    if let Some(element) = (0..n).find(|&s| counts[s] != 1) {
        return Err(ConstructError::FactorizationNotUnique { element, count: counts[element] });
    }
    Ok(parts)
}

/// The exact-factorization operator `R(u + v) = -v` for a pair `(U, V)`
/// of Clifford subsemigroups factoring every element uniquely. Asserts
/// that every `R(a + R(a))` is idempotent and that `a ↦ (u_a, v_a)` is
/// an isomorphism from `(S, ∘_R)` onto `U × V^op`.
pub fn exact_factorization(
    ct: &CliffordTable,
    u: &[usize],
    v: &[usize],
) -> Result<RbOperator, ConstructError> {
    let sub_u = restrict_part(ct, FactorPart::U, u)?;
    let sub_v = restrict_part(ct, FactorPart::V, v)?;
    let parts = unique_factorization(ct, &[&sub_u.members, &sub_v.members])?;
    let n = ct.order();
    let m: Vec<usize> = (0..n).map(|a| ct.neg(parts[a][1])).collect();
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("exact factorizations induce operators");
    for a in 0..n {
        assert!(
            ct.is_idempotent(out.apply(ct.add(a, out.apply(a)))),
            "R(a + R(a)) lands in the idempotents"
        );
    }
    let circ = circ_table(&out);
    let product = sub_u.table.base().direct_product(&sub_v.table.base().opposite());
    let iso = ElementMap::new(
        n,
        product.order(),
        (0..n)
            .map(|a| {
                sub_u.to_local(parts[a][0]).unwrap() * sub_v.table.order() + sub_v.to_local(parts[a][1]).unwrap()
            })
            .collect(),
    )
    .expect("in range");
    assert!(
        is_isomorphism(&iso, &circ, &product),
        "(S, ∘_R) must be isomorphic to U × V-op via the factorization"
    );
    Ok(out)
}

/// The three-factor operator `R(u + v + t) = L(v) - t`, for Clifford
/// subsemigroups `U, V, T` factoring every element uniquely, `U` and `V`
/// commuting elementwise, an inner weight +1 operator `L` on `V` (given
/// in `V`-local indices), and every `L(v)` commuting with every element
/// of `T`. Asserts `(S, ∘_R) ≅ U × (V, ∘_L) × T^op`.
pub fn uvt(
    ct: &CliffordTable,
    u: &[usize],
    v: &[usize],
    t: &[usize],
    l: &ElementMap,
) -> Result<RbOperator, ConstructError> {
    let sub_u = restrict_part(ct, FactorPart::U, u)?;
    let sub_v = restrict_part(ct, FactorPart::V, v)?;
    let sub_t = restrict_part(ct, FactorPart::T, t)?;
    if l.source_order() != sub_v.table.order() || l.target_order() != sub_v.table.order() {
        return Err(ConstructError::MapShape {
            expected: sub_v.table.order(),
            found: l.source_order(),
        });
    }
    let inner = check_rb(&sub_v.table, l, Weight::Plus)
        .map_err(|e| ConstructError::InnerOperator(Box::new(e)))?;
    for &x in &sub_u.members {
        for &y in &sub_v.members {
            if ct.add(x, y) != ct.add(y, x) {
                return Err(ConstructError::NotCommutingParts { witness: (x, y) });
            }
        }
    }
    // L(v) in ambient indices.
    let l_global = |v_global: usize| {
        sub_v.to_global(inner.apply(sub_v.to_local(v_global).unwrap()))
    };
    for &y in &sub_v.members {
        let ly = l_global(y);
        for &z in &sub_t.members {
            if ct.add(ly, z) != ct.add(z, ly) {
                return Err(ConstructError::LCommutation { witness: (y, z) });
            }
        }
    }
    let parts = unique_factorization(ct, &[&sub_u.members, &sub_v.members, &sub_t.members])?;
    let n = ct.order();
    let m: Vec<usize> = (0..n).map(|a| ct.sub(l_global(parts[a][1]), parts[a][2])).collect();
    let map = ElementMap::endo(n, m).expect("in range");
    let out = check_rb(ct, &map, Weight::Plus).expect("three-factor hypotheses suffice");

    let circ = circ_table(&out);
    let v_l = FiniteSemigroup::from_fn(sub_v.table.order(), |a, b| {
        let vt = &sub_v.table;
        vt.sub(vt.add(vt.add(a, inner.apply(a)), b), inner.apply(a))
    })
    .expect("in range");
    let product = sub_u
        .table
        .base()
        .direct_product(&v_l)
        .direct_product(&sub_t.table.base().opposite());
    let iso = ElementMap::new(
        n,
        product.order(),
        (0..n)
            .map(|a| {
                let ui = sub_u.to_local(parts[a][0]).unwrap();
                let vi = sub_v.to_local(parts[a][1]).unwrap();
                let ti = sub_t.to_local(parts[a][2]).unwrap();
                (ui * sub_v.table.order() + vi) * sub_t.table.order() + ti
            })
            .collect(),
    )
    .expect("in range");
    assert!(
        is_isomorphism(&iso, &circ, &product),
        "(S, ∘_R) must be isomorphic to U × V_L × T-op via the factorization"
    );
    Ok(out)
}

/// The strong operators of both weights on a carrier, with the pairing
/// induced by `Φ(R) = a + R(a)` and `Ψ(L) = -a + L(a)`; the two maps are
/// asserted to be mutually inverse bijections between the strong sets.
#[derive(Debug, Clone)]
pub struct WeightCorrespondence {
    pub plus: Vec<RbOperator>,
    pub minus: Vec<RbOperator>,
    /// `(i, j)` pairs: `Φ(plus[i]) = minus[j]` and `Ψ(minus[j]) = plus[i]`.
    pub pairing: Vec<(usize, usize)>,
}

pub fn weight_correspondence(
    carrier: &CliffordTable,
    budget: &EnumBudget,
) -> Result<WeightCorrespondence, EnumError> {
    let plus = enumerate_rb(carrier, Weight::Plus, true, budget)?;
    let minus = enumerate_rb(carrier, Weight::Minus, true, budget)?;
    assert_eq!(plus.len(), minus.len(), "strong sets must have equal size");
    let mut hit = vec![false; minus.len()];
    let mut pairing = Vec::with_capacity(plus.len());
    for (i, op) in plus.iter().enumerate() {
        let phi = weight_phi(op).expect("weight is +1");
        let j = minus
            .iter()
            .position(|cand| cand.map() == phi.map())
            .expect("the image of a strong operator is a strong operator of the other weight");
        assert!(!hit[j], "pairing must be injective");
        hit[j] = true;
        let back = weight_psi(&minus[j]).expect("weight is -1");
        assert_eq!(back.map(), op.map(), "the two maps must be mutually inverse");
        pairing.push((i, j));
    }
    assert!(hit.iter().all(|&h| h), "pairing must be surjective");
    Ok(WeightCorrespondence { plus, minus, pairing })
}

/// Raw table of `a ∘_R b = a + R(a) + b - R(a)`.
fn circ_table(rb: &RbOperator) -> FiniteSemigroup {
    let ct = rb.carrier();
    FiniteSemigroup::from_fn(rb.order(), |a, b| {
        ct.sub(ct.add(ct.add(a, rb.apply(a)), b), rb.apply(a))
    })
    .expect("in range")
}

/// The dual weak left brace `(S, +, ∘_R)` induced by a weight +1
/// operator. Asserts the known consequences: the brace axioms, the
/// `∘_R`-inverse formula `-R(a) - a + R(a)`, that `R` is again a weight
/// +1 operator on `(S, ∘_R)` and a homomorphism `(S, ∘_R) → (S, +)`, and
/// that `∘_R` collapses to `+` exactly when every `a⁰ + R(a)` is central.
pub fn circ_r(rb: &RbOperator) -> Result<DualWeakLeftBrace, ConstructError> {
    if rb.weight() != Weight::Plus {
        return Err(ConstructError::WrongWeight { expected: Weight::Plus });
    }
    let ct = rb.carrier();
    let n = rb.order();
    let circ = circ_table(rb);
    let brace =
        DualWeakLeftBrace::check(ct.base(), &circ).expect("the induced pair is a brace");
    for a in 0..n {
        assert_eq!(
            brace.inv(a),
            ct.add(ct.sub(ct.neg(rb.apply(a)), a), rb.apply(a)),
            "∘_R inverse is -R(a) - a + R(a)"
        );
    }
    check_rb(brace.circ_table(), rb.map(), Weight::Plus)
        .expect("R is again an operator on (S, ∘_R)");
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                rb.apply(brace.circ(a, b)),
                ct.add(rb.apply(a), rb.apply(b)),
                "R is a homomorphism from (S, ∘_R) to (S, +)"
            );
        }
    }
    let coincide = brace.operations_coincide();
    let all_central = (0..n).all(|a| ct.is_central(ct.add(ct.zero(a), rb.apply(a))));
    assert_eq!(coincide, all_central, "∘_R = + exactly when each a⁰ + R(a) is central");
    Ok(brace)
}

/// Strong-case part (4) of the structure suite, each clause reported
/// separately: `Ker R₊ ⊆ Im R`, normality of `Ker R₊` within `(Im R, +)`,
/// and (informational, not required) normality in the ambient carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelImageItem4 {
    pub contained_in_im_r: bool,
    pub normal_within_im_r: bool,
    pub normal_in_ambient: bool,
}

/// Strong-case part (5): the isomorphism `Im R₊ / Ker R ≅ Im R / Ker R₊`
/// sending `R₊(a) + Ker R` to `R(a) + Ker R₊`.
#[derive(Debug, Clone)]
pub struct QuotientIsomorphism {
    /// Classes of `Im R₊ / Ker R`, as sorted global index lists.
    pub left_classes: Vec<Vec<usize>>,
    /// Classes of `Im R / Ker R₊`.
    pub right_classes: Vec<Vec<usize>>,
    /// Left class index → right class index; a bijective homomorphism.
    pub map: ElementMap,
}

/// Kernel/image analysis of a weight +1 operator.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub strong: bool,
    pub ker_r: Vec<usize>,
    pub ker_r_plus: Vec<usize>,
    pub im_r: Vec<usize>,
    pub im_r_plus: Vec<usize>,
    /// `S = Im R₊ + Im R` as a setwise sum.
    pub sum_covers: bool,
    /// `Ker R` and `Ker R₊` are normal subsemigroups of `(S, ∘_R)`.
    pub kernels_normal_in_circ: bool,
    /// `Ker R` is a normal subsemigroup of `(Im R₊, +)`.
    pub ker_r_normal_in_im_r_plus: bool,
    /// Strong operators only.
    pub item4: Option<KernelImageItem4>,
    /// Strong operators only.
    pub item5: Option<QuotientIsomorphism>,
}

/// Runs the kernel/image structure suite on a weight +1 operator. The
/// unconditional parts and the strong-case containment/normality claims
/// are asserted; ambient normality of `Ker R₊` is only reported.
pub fn structure_suite(rb: &RbOperator) -> Result<StructureReport, ConstructError> {
    if rb.weight() != Weight::Plus {
        return Err(ConstructError::WrongWeight { expected: Weight::Plus });
    }
    let ct = rb.carrier();
    let n = rb.order();
    let brace = circ_r(rb)?;
    let circ_ct = brace.circ_table();

    let rp: Vec<usize> = (0..n).map(|a| ct.add(a, rb.apply(a))).collect();
    let ker_r: Vec<usize> = (0..n).filter(|&x| ct.is_idempotent(rb.apply(x))).collect();
    let ker_r_plus: Vec<usize> = (0..n).filter(|&x| ct.is_idempotent(rp[x])).collect();
    let mut im_r: Vec<usize> = (0..n).map(|a| rb.apply(a)).collect();
    im_r.sort_unstable();
    im_r.dedup();
    let mut im_r_plus: Vec<usize> = rp.clone();
    im_r_plus.sort_unstable();
    im_r_plus.dedup();

    // R₊ is a homomorphism (S, ∘_R) → (S, +) commuting with R.
    for a in 0..n {
        assert_eq!(rp[rb.apply(a)], rb.apply(rp[a]), "R₊ R = R R₊");
        for b in 0..n {
            assert_eq!(
                rp[circ_ct.add(a, b)],
                ct.add(rp[a], rp[b]),
                "R₊ is a homomorphism from (S, ∘_R) to (S, +)"
            );
        }
    }

    // Kernels and images are Clifford subsemigroups.
    let _ = ct.restrict(&ker_r).expect("Ker R is a Clifford subsemigroup");
    let sub_im = ct.restrict(&im_r).expect("Im R is a Clifford subsemigroup");
    let sub_imp = ct.restrict(&im_r_plus).expect("Im R₊ is a Clifford subsemigroup");

    // (1) S = Im R₊ + Im R, witnessed by a = R₊(a) + (-R(a)).
    for a in 0..n {
        assert_eq!(a, ct.add(rp[a], ct.neg(rb.apply(a))), "a = R₊(a) - R(a)");
    }
    let mut sum: Vec<usize> = im_r_plus
        .iter()
        .flat_map(|&x| im_r.iter().map(move |&y| (x, y)))
        .map(|(x, y)| ct.add(x, y))
        .collect();
    sum.sort_unstable();
    sum.dedup();
    let sum_covers = sum == (0..n).collect::<Vec<_>>();
    assert!(sum_covers, "Im R₊ + Im R must cover the carrier");

    // (2) Both kernels are normal subsemigroups of (S, ∘_R).
    NormalSubsemigroup::new(circ_ct, &ker_r).expect("Ker R is normal in (S, ∘_R)");
    NormalSubsemigroup::new(circ_ct, &ker_r_plus).expect("Ker R₊ is normal in (S, ∘_R)");

    // (3) Ker R is normal in (Im R₊, +); membership via a = R₊(a).
    let ker_local: Vec<usize> =
        ker_r.iter().map(|&x| {
            assert_eq!(rp[x], x, "kernel elements are fixed by R₊");
            sub_imp.to_local(x).expect("Ker R sits inside Im R₊")
        }).collect();
    let ker_in_imp =
        NormalSubsemigroup::new(&sub_imp.table, &ker_local).expect("Ker R is normal in Im R₊");

    let (item4, item5) = if rb.is_strong() {
        let contained = ker_r_plus.iter().all(|x| im_r.binary_search(x).is_ok());
        assert!(contained, "strong operators force Ker R₊ ⊆ Im R");
        let kerp_local: Vec<usize> =
            ker_r_plus.iter().map(|&x| sub_im.to_local(x).expect("contained")).collect();
        let kerp_in_im = NormalSubsemigroup::new(&sub_im.table, &kerp_local)
            .expect("Ker R₊ is normal in (Im R, +)");
        let ambient = NormalSubsemigroup::new(ct, &ker_r_plus).is_ok();
        let item4 = KernelImageItem4 {
            contained_in_im_r: true,
            normal_within_im_r: true,
            normal_in_ambient: ambient,
        };

        let left_q = quotient(&sub_imp.table, &ker_in_imp);
        let right_q = quotient(&sub_im.table, &kerp_in_im);
        let mut class_map: Vec<Option<usize>> = vec![None; left_q.classes.len()];
        for a in 0..n {
            let lc = left_q.projection.apply(sub_imp.to_local(rp[a]).expect("image"));
            let rc = right_q.projection.apply(sub_im.to_local(rb.apply(a)).expect("image"));
            match class_map[lc] {
                None => class_map[lc] = Some(rc),
                Some(prev) => assert_eq!(prev, rc, "R₊(a) + Ker R ↦ R(a) + Ker R₊ is well-defined"),
            }
        }
        let map = ElementMap::new(
            left_q.classes.len(),
            right_q.classes.len(),
            class_map.into_iter().map(|c| c.expect("every class is hit")).collect(),
        )
        .expect("in range");
        assert!(
            is_isomorphism(&map, left_q.table.base(), right_q.table.base()),
            "Im R₊ / Ker R ≅ Im R / Ker R₊"
        );
        let globalize = |classes: &[Vec<usize>], sub: &SubClifford| {
            classes
                .iter()
                .map(|cls| cls.iter().map(|&i| sub.to_global(i)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let iso = QuotientIsomorphism {
            left_classes: globalize(&left_q.classes, &sub_imp),
            right_classes: globalize(&right_q.classes, &sub_im),
            map,
        };
        (Some(item4), Some(iso))
    } else {
        (None, None)
    };

    Ok(StructureReport {
        strong: rb.is_strong(),
        ker_r,
        ker_r_plus,
        im_r,
        im_r_plus,
        sum_covers,
        kernels_normal_in_circ: true,
        ker_r_normal_in_im_r_plus: true,
        item4,
        item5,
    })
}

/// Commutative-carrier report: on commutative carriers every operator is
/// an endomorphism (asserted); on noncommutative carriers the
/// endomorphism status is merely reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoCommutReport {
    pub commutative: bool,
    pub is_endomorphism: bool,
}

pub fn endo_iff_commutative(rb: &RbOperator) -> EndoCommutReport {
    let commutative = rb.carrier().base().commutativity_failure().is_none();
    let endo = is_endomorphism(rb.map(), rb.carrier().base());
    if commutative {
        assert!(endo, "operators on commutative carriers are endomorphisms");
    }
    EndoCommutReport { commutative, is_endomorphism: endo }
}
