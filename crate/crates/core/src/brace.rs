//! Dual weak left braces: one carrier, two compatible Clifford
//! operations.
//!
//! A [`DualWeakLeftBrace`] holds tables for `+` and `∘` over the same
//! index set such that both are Clifford,
//!
//! ```text
//! x ∘ (y + z) = (x ∘ y) - x + (x ∘ z)      (compatibility)
//! x ∘ x⁻¹     = -x + x                      (inverse law)
//! ```
//!
//! where `x⁻¹` is the `∘`-inverse. Validation reports the first failing
//! axiom with its smallest witness; on success the derived facts
//! (`E(S,+) = E(S,∘)`, shared idempotent parts, idempotents acting the
//! same way through both operations) are asserted, along with the lambda
//! maps `λ_a(b) = -a + (a ∘ b)` forming an action by additive
//! endomorphisms. Braces are one of the four sources of Yang–Baxter
//! solutions in this crate; see [`ybe_from_brace`].

use crate::clifford::{quotient, CliffordTable, NormalSubsemigroup, NormalityError, Quotient};
use crate::semigroup::{homomorphism_failure, ElementMap, FiniteSemigroup, NotCliffordError};
use crate::witness::{fmt_code_witness, Witness};
use crate::ybe::YbeMap;
use std::fmt;
use thiserror::Error;

/// A validated dual weak left brace.
#[derive(Debug, Clone)]
pub struct DualWeakLeftBrace {
    add: CliffordTable,
    circ: CliffordTable,
}

/// First failing axiom of [`DualWeakLeftBrace::check`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceFailure {
    OrderMismatch { add_order: usize, circ_order: usize },
    AddNotClifford(NotCliffordError),
    CircNotClifford(NotCliffordError),
    Compatibility { witness: (usize, usize, usize) },
    InverseLaw { witness: usize },
}

impl BraceFailure {
    pub fn code(&self) -> String {
        match self {
            BraceFailure::OrderMismatch { .. } => "brace-shape".to_string(),
            BraceFailure::AddNotClifford(inner) => format!("add-{}", inner.code()),
            BraceFailure::CircNotClifford(inner) => format!("circ-{}", inner.code()),
            BraceFailure::Compatibility { .. } => "brace-dist".to_string(),
            BraceFailure::InverseLaw { .. } => "brace-inv".to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            BraceFailure::OrderMismatch { add_order, circ_order } => (add_order, circ_order).into(),
            BraceFailure::AddNotClifford(ref inner) => inner.witness(),
            BraceFailure::CircNotClifford(ref inner) => inner.witness(),
            BraceFailure::Compatibility { witness } => witness.into(),
            BraceFailure::InverseLaw { witness } => witness.into(),
        }
    }
}

impl fmt::Display for BraceFailure {
    fmt_code_witness!();
}

impl DualWeakLeftBrace {
    /// Validates the brace axioms over a pair of raw tables.
    pub fn check(
        add_sg: &FiniteSemigroup,
        circ_sg: &FiniteSemigroup,
    ) -> Result<DualWeakLeftBrace, BraceFailure> {
        if add_sg.order() != circ_sg.order() {
            return Err(BraceFailure::OrderMismatch {
                add_order: add_sg.order(),
                circ_order: circ_sg.order(),
            });
        }
        let add = add_sg.expect_clifford().map_err(BraceFailure::AddNotClifford)?;
        let circ = circ_sg.expect_clifford().map_err(BraceFailure::CircNotClifford)?;
        let n = add.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = circ.add(x, add.add(y, z));
                    let rhs = add.add(add.sub(circ.add(x, y), x), circ.add(x, z));
                    if lhs != rhs {
                        return Err(BraceFailure::Compatibility { witness: (x, y, z) });
                    }
                }
            }
        }
        for x in 0..n {
            if circ.zero(x) != add.zero(x) {
                return Err(BraceFailure::InverseLaw { witness: x });
            }
        }

        // Derived facts; failures here would contradict the axioms.
        assert_eq!(add.idempotents(), circ.idempotents(), "the two idempotent sets must agree");
        for &e in add.idempotents() {
            for a in 0..n {
                let s = add.add(e, a);
                assert_eq!(add.add(a, e), s, "idempotents are central");
                assert_eq!(circ.add(e, a), s, "idempotents act identically through both ops");
                assert_eq!(circ.add(a, e), s, "idempotents act identically through both ops");
            }
        }
        let brace = DualWeakLeftBrace { add, circ };
        brace.assert_lambda_action();
        Ok(brace)
    }

    /// The trivial brace `∘ = +` over a Clifford table.
    pub fn trivial(ct: &CliffordTable) -> DualWeakLeftBrace {
        Self::check(ct.base(), ct.base()).expect("a Clifford table braces with itself")
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.add(a, b)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.add(a, b)
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.neg(a)
    }

    /// Multiplicative (`∘`) inverse.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.circ.neg(a)
    }

    /// The common idempotent part `a⁰`.
    #[inline]
    pub fn zero(&self, a: usize) -> usize {
        self.add.zero(a)
    }

    pub fn add_table(&self) -> &CliffordTable {
        &self.add
    }

    pub fn circ_table(&self) -> &CliffordTable {
        &self.circ
    }

    /// `λ_a(b) = -a + (a ∘ b)`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.add.add(self.add.neg(a), self.circ.add(a, b))
    }

    /// The lambda maps as a family indexed by `a`.
    pub fn lambda_maps(&self) -> Vec<ElementMap> {
        let n = self.order();
        (0..n)
            .map(|a| {
                ElementMap::endo(n, (0..n).map(|b| self.lambda(a, b)).collect())
                    .expect("lambda values are in range")
            })
            .collect()
    }

    /// Lambda maps are additive endomorphisms and `a ↦ λ_a` turns `∘`
    /// into composition; both are theorems of the axioms.
    fn assert_lambda_action(&self) {
        let n = self.order();
        let lambdas = self.lambda_maps();
        for a in 0..n {
            assert!(
                homomorphism_failure(&lambdas[a], self.add.base(), self.add.base()).is_none(),
                "lambda maps must be additive endomorphisms"
            );
            for b in 0..n {
                let composed = lambdas[a].compose(&lambdas[b]);
                assert_eq!(
                    lambdas[self.circ(a, b)],
                    composed,
                    "a ↦ λ_a must send ∘ to composition"
                );
            }
        }
    }

    /// True when the two operations coincide entry-for-entry.
    pub fn operations_coincide(&self) -> bool {
        self.add.base().table_eq(self.circ.base())
    }
}

/// Verdict of [`is_brace_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraceHomVerdict {
    Hom,
    /// Not even an additive homomorphism.
    NotAdditive { witness: (usize, usize) },
    /// Additive but does not respect `∘`.
    NotMultiplicative { witness: (usize, usize) },
}

impl BraceHomVerdict {
    pub fn is_hom(&self) -> bool {
        matches!(self, BraceHomVerdict::Hom)
    }
}

/// Checks whether `f` is a brace homomorphism, cross-validating the
/// direct `∘`-preservation check against the lambda-map criterion
/// `f ∘ λ_a = λ_{f(a)} ∘ f`; the two must agree for additive maps.
pub fn is_brace_hom(
    f: &ElementMap,
    src: &DualWeakLeftBrace,
    dst: &DualWeakLeftBrace,
) -> BraceHomVerdict {
    if let Some(witness) = homomorphism_failure(f, src.add_table().base(), dst.add_table().base())
    {
        return BraceHomVerdict::NotAdditive { witness };
    }
    let mut direct = None;
    'outer: for a in 0..src.order() {
        for b in 0..src.order() {
            if f.apply(src.circ(a, b)) != dst.circ(f.apply(a), f.apply(b)) {
                direct = Some((a, b));
                break 'outer;
            }
        }
    }
    let lambda_ok = (0..src.order()).all(|a| {
        (0..src.order())
            .all(|b| f.apply(src.lambda(a, b)) == dst.lambda(f.apply(a), f.apply(b)))
    });
    assert_eq!(
        direct.is_none(),
        lambda_ok,
        "direct and lambda-criterion checks must agree for additive maps"
    );
    match direct {
        None => BraceHomVerdict::Hom,
        Some(witness) => BraceHomVerdict::NotMultiplicative { witness },
    }
}

/// A validated brace ideal: normal for both operations and stable under
/// every lambda map.
#[derive(Debug, Clone)]
pub struct BraceIdeal {
    members: Vec<usize>,
    add_normal: NormalSubsemigroup,
    circ_normal: NormalSubsemigroup,
}

/// Failure modes of [`BraceIdeal::new`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceIdealError {
    AddNormality(NormalityError),
    CircNormality(NormalityError),
    LambdaEscapes { element: usize, member: usize },
}

impl BraceIdealError {
    pub fn code(&self) -> String {
        match self {
            BraceIdealError::AddNormality(inner) => format!("ideal-add-{}", inner.code()),
            BraceIdealError::CircNormality(inner) => format!("ideal-circ-{}", inner.code()),
            BraceIdealError::LambdaEscapes { .. } => "ideal-lambda".to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            BraceIdealError::AddNormality(ref inner) => inner.witness(),
            BraceIdealError::CircNormality(ref inner) => inner.witness(),
            BraceIdealError::LambdaEscapes { element, member } => (element, member).into(),
        }
    }
}

impl fmt::Display for BraceIdealError {
    fmt_code_witness!();
}

impl BraceIdeal {
    pub fn new(brace: &DualWeakLeftBrace, members: &[usize]) -> Result<Self, BraceIdealError> {
        let add_normal = NormalSubsemigroup::new(brace.add_table(), members)
            .map_err(BraceIdealError::AddNormality)?;
        let circ_normal = NormalSubsemigroup::new(brace.circ_table(), members)
            .map_err(BraceIdealError::CircNormality)?;
        for a in 0..brace.order() {
            for &i in add_normal.members() {
                if !add_normal.contains(brace.lambda(a, i)) {
                    return Err(BraceIdealError::LambdaEscapes { element: a, member: i });
                }
            }
        }
        Ok(BraceIdeal { members: add_normal.members().to_vec(), add_normal, circ_normal })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

/// A brace quotient: the quotient brace plus the class partition and
/// projection (shared by both operations).
#[derive(Debug, Clone)]
pub struct BraceQuotient {
    pub brace: DualWeakLeftBrace,
    pub classes: Vec<Vec<usize>>,
    pub projection: ElementMap,
}

/// Quotients a brace by an ideal. The additive and multiplicative
/// congruences induce the same partition, the translate sets `a + I` and
/// `a ∘ I` coincide, and the quotient operations form a brace again; all
/// of that is asserted here since it is forced by ideal validation.
pub fn quotient_brace(brace: &DualWeakLeftBrace, ideal: &BraceIdeal) -> BraceQuotient {
    let q_add: Quotient = quotient(brace.add_table(), &ideal.add_normal);
    let q_circ: Quotient = quotient(brace.circ_table(), &ideal.circ_normal);
    assert_eq!(
        q_add.classes, q_circ.classes,
        "both congruences must induce the same partition"
    );
    let n = brace.order();
    for a in 0..n {
        let mut add_translate: Vec<usize> =
            ideal.members().iter().map(|&i| brace.add(a, i)).collect();
        let mut circ_translate: Vec<usize> =
            ideal.members().iter().map(|&i| brace.circ(a, i)).collect();
        add_translate.sort_unstable();
        add_translate.dedup();
        circ_translate.sort_unstable();
        circ_translate.dedup();
        assert_eq!(add_translate, circ_translate, "a + I and a ∘ I must coincide as sets");
    }
    let qb = DualWeakLeftBrace::check(q_add.table.base(), q_circ.table.base())
        .expect("quotient by an ideal is a brace");
    BraceQuotient { brace: qb, classes: q_add.classes, projection: q_add.projection }
}

/// The Yang–Baxter solution attached to a brace:
///
/// ```text
/// r(a,b) = (u, u⁻¹ ∘ a ∘ b)   with u = -a + (a ∘ b).
/// ```
///
/// The braid relation is a theorem here, so it is asserted.
pub fn ybe_from_brace(brace: &DualWeakLeftBrace) -> YbeMap {
    let r = YbeMap::from_fn(brace.order(), |a, b| {
        let u = brace.add(brace.neg(a), brace.circ(a, b));
        let second = brace.circ(brace.circ(brace.inv(u), a), b);
        (u, second)
    });
    r.assert_solution("brace");
    r
}

/// Exhaustive braid-relation test for an arbitrary candidate map;
/// returns the smallest violating triple.
pub fn check_yang_baxter(r: &YbeMap) -> Option<(usize, usize, usize)> {
    r.braid_failure()
}
