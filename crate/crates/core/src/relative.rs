//! Relative Rota–Baxter systems: a Clifford semigroup `(S, +)` acting on
//! a Clifford semigroup `(T, +)` by additive endomorphisms, together
//! with an operator `R: T → S` compatible with the action.
//!
//! [`Action`] validates the action part — one endomorphism `φ_x` of
//! `(T, +)` per element of `S`, with `φ_{x+y} = φ_x ∘ φ_y`.
//! [`check_relative`] then validates, in order,
//!
//! ```text
//! C1  R(a) + R(b) = R(a + φ_{R(a)}(b))
//! C2  φ_{R(a)⁰}(a) = a
//! C3  R(a⁰) = R(a)⁰
//! C4  a + φ_{R(a)}(b⁰) = b⁰ + φ_{R(b⁰)}(a)
//! ```
//!
//! and flags the system *strong* when additionally
//!
//! ```text
//! C5  a⁰ + φ_{R(a)}(b) = φ_{R(a)}(b)
//! ```
//!
//! A valid system induces the descendent product `a ∘ b = a + φ_{R(a)}(b)`
//! making `(T, +, ∘)` a dual weak left brace ([`descendent`]). The pairs
//! `(x, a)` with `φ_{x⁰}(a) = a` form the λ-semidirect product
//! ([`lambda_semidirect`]), and validity of the whole system is
//! equivalent to the graph `{(R(a), a)}` being a Clifford subsemigroup
//! of it ([`graph_characterization`]). Systems interconvert with post
//! tables ([`to_post`], [`from_post`]), admit operator twists by
//! compatible map pairs ([`twist`]), ideals and quotients
//! ([`ideal_and_quotient`]), plain Rota–Baxter embeddings
//! ([`embed_plain`]), a homomorphism correspondence with descendent
//! braces ([`hom_correspondence`]), and a Yang–Baxter solution
//! ([`ybe_from_relative`]).

use crate::brace::{is_brace_hom, quotient_brace, BraceIdeal, DualWeakLeftBrace};
use crate::clifford::{
    quotient, CliffordTable, NormalSubsemigroup, NormalityError, RestrictError,
};
use crate::post::{check_post, sub_adjacent, PostTable};
use crate::rota_baxter::{EnumBudget, EnumError, RbOperator, Weight};
use crate::semigroup::{homomorphism_failure, ElementMap, FiniteSemigroup, MapError, NotCliffordError};
use crate::witness::Witness;
use crate::ybe::YbeMap;
use std::fmt;
use thiserror::Error;

/// A validated action of `(S, +)` on `(T, +)` by additive
/// endomorphisms: `φ_{x+y} = φ_x ∘ φ_y`.
#[derive(Debug, Clone)]
pub struct Action {
    t: CliffordTable,
    s: CliffordTable,
    maps: Vec<ElementMap>,
}

/// Why a family of maps fails to be an action.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    /// Wrong number of maps, or a map over the wrong index set.
    Shape(MapError),
    /// Some `φ_x` is not an endomorphism of `(T, +)`.
    NotEndomorphism { element: usize, witness: (usize, usize) },
    /// `φ_{x+y} ≠ φ_x ∘ φ_y`.
    NotHomomorphism { witness: (usize, usize) },
}

impl ActionError {
    pub fn code(&self) -> &'static str {
        match self {
            ActionError::Shape(_) => "action-shape",
            ActionError::NotEndomorphism { .. } => "action-endo",
            ActionError::NotHomomorphism { .. } => "action-hom",
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            ActionError::Shape(MapError::LengthMismatch { len, .. }) => len.into(),
            ActionError::Shape(MapError::ValueOutOfRange { index, .. }) => index.into(),
            ActionError::NotEndomorphism { element, witness } => {
                (element, witness.0, witness.1).into()
            }
            ActionError::NotHomomorphism { witness } => witness.into(),
        }
    }
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::Shape(inner) => write!(f, "action-shape ({inner})"),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

impl Action {
    /// Validates one endomorphism of `t` per element of `s`.
    pub fn new(
        t: CliffordTable,
        s: CliffordTable,
        maps: Vec<ElementMap>,
    ) -> Result<Action, ActionError> {
        if maps.len() != s.order() {
            return Err(ActionError::Shape(MapError::LengthMismatch {
                len: maps.len(),
                expected: s.order(),
            }));
        }
        for (x, map) in maps.iter().enumerate() {
            if map.source_order() != t.order() || map.target_order() != t.order() {
                return Err(ActionError::Shape(MapError::LengthMismatch {
                    len: map.source_order(),
                    expected: t.order(),
                }));
            }
            if let Some(witness) = homomorphism_failure(map, t.base(), t.base()) {
                return Err(ActionError::NotEndomorphism { element: x, witness });
            }
        }
        for x in 0..s.order() {
            for y in 0..s.order() {
                if maps[x].compose(&maps[y]).as_slice() != maps[s.add(x, y)].as_slice() {
                    return Err(ActionError::NotHomomorphism { witness: (x, y) });
                }
            }
        }
        Ok(Action { t, s, maps })
    }

    /// The acted-on Clifford semigroup `(T, +)`.
    pub fn t(&self) -> &CliffordTable {
        &self.t
    }

    /// The acting Clifford semigroup `(S, +)`.
    pub fn s(&self) -> &CliffordTable {
        &self.s
    }

    /// The endomorphism attached to `x ∈ S`.
    pub fn map(&self, x: usize) -> &ElementMap {
        &self.maps[x]
    }

    pub fn maps(&self) -> &[ElementMap] {
        &self.maps
    }

    /// `φ_x(a)`.
    pub fn apply(&self, x: usize, a: usize) -> usize {
        self.maps[x].apply(a)
    }
}

/// The conjugation action of a Clifford table on itself,
/// `φ_a(x) = a + x - a`. Always valid: idempotent parts are central, so
/// each `φ_a` is additive and `a ↦ φ_a` is a homomorphism.
pub fn conjugation_action(ct: &CliffordTable) -> Action {
    let n = ct.order();
    let maps = (0..n)
        .map(|a| {
            let images = (0..n).map(|x| ct.sub(ct.add(a, x), a)).collect();
            ElementMap::endo(n, images).expect("values are in range")
        })
        .collect();
    Action::new(ct.clone(), ct.clone(), maps).expect("conjugation is an action")
}

/// A validated relative Rota–Baxter system `(T, S, φ, R)`.
#[derive(Debug, Clone)]
pub struct RelativeRbSystem {
    action: Action,
    r: ElementMap,
    strong: bool,
}

impl RelativeRbSystem {
    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn t(&self) -> &CliffordTable {
        self.action.t()
    }

    pub fn s(&self) -> &CliffordTable {
        self.action.s()
    }

    pub fn r(&self) -> &ElementMap {
        &self.r
    }

    /// `R(a)`.
    pub fn apply_r(&self, a: usize) -> usize {
        self.r.apply(a)
    }

    /// `φ_x(a)`.
    pub fn phi(&self, x: usize, a: usize) -> usize {
        self.action.apply(x, a)
    }

    /// Whether C5 holds everywhere.
    pub fn is_strong(&self) -> bool {
        self.strong
    }

    /// Smallest `(a, b)` violating C5, if any.
    pub fn strong_failure(&self) -> Option<(usize, usize)> {
        let t = self.t();
        for a in 0..t.order() {
            for b in 0..t.order() {
                let img = self.phi(self.apply_r(a), b);
                if t.add(t.zero(a), img) != img {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// First failing requirement of [`check_relative`] /
/// [`check_relative_tables`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelativeFailure {
    /// `(T, +)` is not Clifford.
    TNotClifford(NotCliffordError),
    /// `(S, +)` is not Clifford.
    SNotClifford(NotCliffordError),
    /// The endomorphism family is not an action.
    Action(ActionError),
    /// `R` is not a map `T → S`.
    Shape(MapError),
    /// C1 fails.
    Compatibility { witness: (usize, usize) },
    /// C2 fails.
    IdempotentAction { witness: usize },
    /// C3 fails.
    IdempotentImage { witness: usize },
    /// C4 fails.
    IdempotentExchange { witness: (usize, usize) },
}

impl RelativeFailure {
    pub fn code(&self) -> String {
        match self {
            RelativeFailure::TNotClifford(inner) => format!("T-{}", inner.code()),
            RelativeFailure::SNotClifford(inner) => format!("S-{}", inner.code()),
            RelativeFailure::Action(inner) => inner.code().to_string(),
            RelativeFailure::Shape(_) => "rel-shape".to_string(),
            RelativeFailure::Compatibility { .. } => "C1".to_string(),
            RelativeFailure::IdempotentAction { .. } => "C2".to_string(),
            RelativeFailure::IdempotentImage { .. } => "C3".to_string(),
            RelativeFailure::IdempotentExchange { .. } => "C4".to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            RelativeFailure::TNotClifford(ref inner) => inner.witness(),
            RelativeFailure::SNotClifford(ref inner) => inner.witness(),
            RelativeFailure::Action(ref inner) => inner.witness(),
            RelativeFailure::Shape(MapError::LengthMismatch { len, .. }) => len.into(),
            RelativeFailure::Shape(MapError::ValueOutOfRange { index, .. }) => index.into(),
            RelativeFailure::Compatibility { witness } => witness.into(),
            RelativeFailure::IdempotentAction { witness } => witness.into(),
            RelativeFailure::IdempotentImage { witness } => witness.into(),
            RelativeFailure::IdempotentExchange { witness } => witness.into(),
        }
    }
}

impl fmt::Display for RelativeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeFailure::Action(inner) => write!(f, "{inner}"),
            RelativeFailure::Shape(inner) => write!(f, "rel-shape ({inner})"),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

/// Validates `r` as a relative Rota–Baxter operator over `action`,
/// reporting the first violated axiom with its smallest witness. On
/// success a battery of derived identities is asserted: `φ_{R(a)⁰}` and
/// `φ_{R(a⁰)}` fix `a⁰`, `-R(a) = R(φ_{-R(a)}(-a))`, `R` maps
/// idempotents to idempotents, `Im R` is a Clifford subsemigroup of
/// `(S, +)`, and on strong systems both sides of C4 simplify to
/// `a + b⁰` and `b⁰ + a`.
pub fn check_relative(
    action: &Action,
    r: &ElementMap,
) -> Result<RelativeRbSystem, RelativeFailure> {
    let t = action.t();
    let s = action.s();
    if r.source_order() != t.order() {
        return Err(RelativeFailure::Shape(MapError::LengthMismatch {
            len: r.source_order(),
            expected: t.order(),
        }));
    }
    if r.target_order() != s.order() {
        return Err(RelativeFailure::Shape(MapError::LengthMismatch {
            len: r.target_order(),
            expected: s.order(),
        }));
    }
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            let lhs = s.add(r.apply(a), r.apply(b));
            let rhs = r.apply(t.add(a, action.apply(r.apply(a), b)));
            if lhs != rhs {
                return Err(RelativeFailure::Compatibility { witness: (a, b) });
            }
        }
    }
    for a in 0..n {
        if action.apply(s.zero(r.apply(a)), a) != a {
            return Err(RelativeFailure::IdempotentAction { witness: a });
        }
    }
    for a in 0..n {
        if r.apply(t.zero(a)) != s.zero(r.apply(a)) {
            return Err(RelativeFailure::IdempotentImage { witness: a });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let e = t.zero(b);
            let lhs = t.add(a, action.apply(r.apply(a), e));
            let rhs = t.add(e, action.apply(r.apply(e), a));
            if lhs != rhs {
                return Err(RelativeFailure::IdempotentExchange { witness: (a, b) });
            }
        }
    }
    let strong = (0..n).all(|a| {
        (0..n).all(|b| {
            let img = action.apply(r.apply(a), b);
            t.add(t.zero(a), img) == img
        })
    });

    for a in 0..n {
        let e = t.zero(a);
        assert_eq!(action.apply(s.zero(r.apply(a)), e), e, "φ_{{R(a)⁰}} fixes a⁰");
        assert_eq!(action.apply(r.apply(e), e), e, "φ_{{R(a⁰)}} fixes a⁰");
        let neg_r = s.neg(r.apply(a));
        assert_eq!(neg_r, r.apply(action.apply(neg_r, t.neg(a))), "-R(a) = R(φ_{{-R(a)}}(-a))");
    }
    for &e in t.idempotents() {
        assert!(s.is_idempotent(r.apply(e)), "R maps idempotents to idempotents");
    }
    let mut image: Vec<usize> = (0..n).map(|a| r.apply(a)).collect();
    image.sort_unstable();
    image.dedup();
    s.restrict(&image).expect("Im R is a Clifford subsemigroup of (S, +)");
    if strong {
        for a in 0..n {
            for b in 0..n {
                let e = t.zero(b);
                assert_eq!(t.add(a, action.apply(r.apply(a), e)), t.add(a, e));
                assert_eq!(t.add(e, action.apply(r.apply(e), a)), t.add(e, a));
            }
        }
    }
    Ok(RelativeRbSystem { action: action.clone(), r: r.clone(), strong })
}

/// Funnel for raw tables: classifies both carriers, validates the
/// action family and the operator shape, then runs [`check_relative`].
pub fn check_relative_tables(
    t_sg: &FiniteSemigroup,
    s_sg: &FiniteSemigroup,
    phi: &[Vec<usize>],
    r: &[usize],
) -> Result<RelativeRbSystem, RelativeFailure> {
    let t = t_sg.expect_clifford().map_err(RelativeFailure::TNotClifford)?;
    let s = s_sg.expect_clifford().map_err(RelativeFailure::SNotClifford)?;
    if phi.len() != s.order() {
        return Err(RelativeFailure::Action(ActionError::Shape(MapError::LengthMismatch {
            len: phi.len(),
            expected: s.order(),
        })));
    }
    let mut maps = Vec::with_capacity(phi.len());
    for row in phi {
        maps.push(
            ElementMap::endo(t.order(), row.clone())
                .map_err(|e| RelativeFailure::Action(ActionError::Shape(e)))?,
        );
    }
    let action = Action::new(t.clone(), s.clone(), maps).map_err(RelativeFailure::Action)?;
    let r_map =
        ElementMap::new(t.order(), s.order(), r.to_vec()).map_err(RelativeFailure::Shape)?;
    check_relative(&action, &r_map)
}

/// The descendent brace of a valid system: `a ∘ b = a + φ_{R(a)}(b)`
/// over the same addition. Asserts the inverse formula
/// `a⁻¹ = φ_{-R(a)}(-a)`, that `R` is a homomorphism `(T, ∘) → (S, +)`,
/// and that each `φ_{R(a)}` fixes `a⁰` and restricts to a bijection of
/// `H_a` inverted by `φ_{-R(a)}`.
pub fn descendent(sys: &RelativeRbSystem) -> DualWeakLeftBrace {
    let t = sys.t();
    let s = sys.s();
    let n = t.order();
    let circ_sg = FiniteSemigroup::from_fn(n, |a, b| t.add(a, sys.phi(sys.apply_r(a), b)))
        .expect("values are in range by construction");
    let brace = DualWeakLeftBrace::check(t.base(), &circ_sg)
        .expect("the descendent product of a valid system is a brace");
    for a in 0..n {
        let ra = sys.apply_r(a);
        assert_eq!(brace.inv(a), sys.phi(s.neg(ra), t.neg(a)), "∘-inverse formula");
        assert_eq!(sys.phi(ra, t.zero(a)), t.zero(a), "φ_{{R(a)}} fixes a⁰");
        for &h in t.component_members(a) {
            let img = sys.phi(ra, h);
            assert_eq!(t.zero(img), t.zero(a), "φ_{{R(a)}} preserves H_a");
            assert_eq!(sys.phi(s.neg(ra), img), h, "φ_{{-R(a)}} inverts it on H_a");
        }
        for b in 0..n {
            assert_eq!(
                sys.apply_r(brace.circ(a, b)),
                s.add(ra, sys.apply_r(b)),
                "R is a homomorphism (T,∘) → (S,+)"
            );
        }
    }
    brace
}

/// The λ-semidirect product `M(S, T, φ)` of an action: pairs `(x, a)`
/// with `φ_{x⁰}(a) = a` under
///
/// ```text
/// (x, a) + (y, b) = (x + y, φ_{y⁰}(a) + φ_x(b))
/// ```
///
/// Defined for any action; no operator is involved. Construction
/// asserts closure, that the product is an inverse semigroup, that its
/// idempotents are exactly the idempotent pairs, and the negation
/// formula `-(x, a) = (-x, φ_{-x}(-a))`.
#[derive(Debug, Clone)]
pub struct LambdaSemidirect {
    semigroup: FiniteSemigroup,
    pairs: Vec<(usize, usize)>,
}

impl LambdaSemidirect {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    /// Members as `(x, a)` pairs, ordered by `x` then `a`; positions
    /// match the semigroup's element indices.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, x: usize, a: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, a)).ok()
    }
}

pub fn lambda_semidirect(action: &Action) -> LambdaSemidirect {
    let t = action.t();
    let s = action.s();
    let mut pairs = Vec::new();
    for x in 0..s.order() {
        for a in 0..t.order() {
            if action.apply(s.zero(x), a) == a {
                pairs.push((x, a));
            }
        }
    }
    let m = pairs.len();
    let index_of = |x: usize, a: usize| pairs.binary_search(&(x, a)).ok();
    let mut flat = Vec::with_capacity(m * m);
    for &(x, a) in &pairs {
        for &(y, b) in &pairs {
            let sum_s = s.add(x, y);
            let sum_t = t.add(action.apply(s.zero(y), a), action.apply(x, b));
            flat.push(index_of(sum_s, sum_t).expect("products of members are members"));
        }
    }
    let labels = pairs.iter().map(|&(x, a)| format!("({x},{a})")).collect();
    let semigroup = FiniteSemigroup::from_flat(m, flat)
        .expect("indices are in range")
        .with_labels(labels)
        .expect("one label per element");

    let classification = semigroup.classify();
    assert!(
        matches!(
            classification,
            crate::semigroup::Classification::Inverse { .. }
                | crate::semigroup::Classification::Clifford(_)
        ),
        "the λ-semidirect product is an inverse semigroup"
    );
    let expected_idempotents: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|&(_, &(x, a))| s.is_idempotent(x) && t.is_idempotent(a))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(
        semigroup.idempotent_elements(),
        expected_idempotents,
        "E(M) is the set of idempotent pairs"
    );
    for (i, &(x, a)) in pairs.iter().enumerate() {
        let nx = s.neg(x);
        let na = action.apply(nx, t.neg(a));
        let j = index_of(nx, na).expect("negations stay inside the carrier");
        assert_eq!(semigroup.add(semigroup.add(i, j), i), i, "negation formula");
        assert_eq!(semigroup.add(semigroup.add(j, i), j), j, "negation formula");
    }
    LambdaSemidirect { semigroup, pairs }
}

/// Outcome of the two independent validity tests of
/// [`graph_characterization`]. The two fields are asserted equal; both
/// are kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphReport {
    /// C1–C4 hold for `(action, r)`.
    pub axioms_ok: bool,
    /// `Gr R = {(R(a), a)}` is a Clifford subsemigroup of `M(S, T, φ)`.
    pub graph_ok: bool,
}

/// Decides validity twice — once through the axioms, once through the
/// graph embedded in the λ-semidirect product — and asserts agreement.
/// When valid, the graph's product table is asserted identical to the
/// descendent `∘` table.
pub fn graph_characterization(action: &Action, r: &ElementMap) -> GraphReport {
    let t = action.t();
    let s = action.s();
    assert_eq!(r.source_order(), t.order(), "operator shape");
    assert_eq!(r.target_order(), s.order(), "operator shape");
    let axioms_ok = check_relative(action, r).is_ok();

    let n = t.order();
    let graph_second = |a: usize, b: usize| {
        t.add(action.apply(s.zero(r.apply(b)), a), action.apply(r.apply(a), b))
    };
    let graph_ok = (|| {
        // Membership of every (R(a), a) in M(S, T, φ).
        for a in 0..n {
            if action.apply(s.zero(r.apply(a)), a) != a {
                return false;
            }
        }
        // Closure under the twisted addition: the product pair must be
        // the graph point of its own second component.
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let first = s.add(r.apply(a), r.apply(b));
                let second = graph_second(a, b);
                if r.apply(second) != first {
                    return false;
                }
                flat.push(second);
            }
        }
        // The induced table (graph points indexed by their second
        // component) must be Clifford.
        FiniteSemigroup::from_flat(n, flat)
            .expect("values are in range")
            .classify()
            .is_clifford()
    })();

    assert_eq!(axioms_ok, graph_ok, "the axioms and the graph test must agree");
    if axioms_ok {
        let sys = check_relative(action, r).expect("just validated");
        let brace = descendent(&sys);
        for a in 0..n {
            for b in 0..n {
                assert_eq!(brace.circ(a, b), graph_second(a, b), "graph product matches ∘_R");
            }
        }
    }
    GraphReport { axioms_ok, graph_ok }
}

/// The post operation of a valid system: `a ▷ b = φ_{R(a)}(b)`.
/// The table is strong exactly when the system is.
pub fn to_post(sys: &RelativeRbSystem) -> PostTable {
    let t = sys.t();
    let n = t.order();
    let mut rhd = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            rhd.push(sys.phi(sys.apply_r(a), b));
        }
    }
    let p = check_post(t.base(), &rhd).expect("a valid system induces a post operation");
    assert_eq!(p.is_strong(), sys.is_strong(), "P5 and C5 coincide here");
    p
}

/// The tautological system of a post table: the sub-adjacent product
/// acts on `(T, +)` through the left translations, with the identity as
/// operator. Strong exactly when the table is.
pub fn from_post(p: &PostTable) -> RelativeRbSystem {
    let t = p.add_table().clone();
    let circ = sub_adjacent(p);
    let maps = (0..p.order()).map(|x| p.left_map(x)).collect();
    let action =
        Action::new(t, circ, maps).expect("left translations act on the sub-adjacent product");
    let r = ElementMap::identity(p.order());
    let sys = check_relative(&action, &r).expect("post tables induce valid systems");
    assert_eq!(sys.is_strong(), p.is_strong(), "C5 and P5 coincide here");
    sys
}

/// `to_post(from_post(p)) = p`, table-exact; holds for every table.
pub fn post_system_roundtrip(p: &PostTable) {
    let back = to_post(&from_post(p));
    assert!(back.add_table().base().table_eq(p.add_table().base()));
    assert_eq!(back.rhd_flat(), p.rhd_flat());
}

/// Embeds a plain weight-(+1) operator as a relative system over the
/// conjugation action of its carrier on itself. The reduction is exact
/// in both directions, so validation cannot fail, and the system is
/// strong exactly when the operator is.
pub fn embed_plain(rb: &RbOperator) -> RelativeRbSystem {
    assert_eq!(rb.weight(), Weight::Plus, "only the +1 convention embeds directly");
    let action = conjugation_action(rb.carrier());
    let sys = check_relative(&action, rb.map()).expect("RB1 and RB2 imply C1–C4");
    assert_eq!(sys.is_strong(), rb.is_strong(), "strength carries over");
    sys
}

/// Precondition failures of the derived constructions on systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelativeConstructError {
    /// A supplied map has the wrong shape.
    Shape(MapError),
    /// The construction needs a strong system; smallest C5 witness.
    NotStrong { witness: (usize, usize) },
    /// The construction needs a bijective operator.
    NotBijective,
    /// The twisting map on `T` is not an automorphism.
    NotAutomorphism { witness: Witness },
    /// The twisting map on `S` is not an endomorphism.
    NotEndomorphism { witness: (usize, usize) },
    /// `φ_auto⁻¹ ∘ φ_x ∘ φ_auto ≠ φ_{ψ(x)}` at the witness `x`.
    TwistHypothesis { witness: usize },
    /// Enumeration work would exceed the budget.
    Budget(EnumError),
}

impl RelativeConstructError {
    pub fn code(&self) -> &'static str {
        match self {
            RelativeConstructError::Shape(_) => "construct-shape",
            RelativeConstructError::NotStrong { .. } => "C5",
            RelativeConstructError::NotBijective => "bijective",
            RelativeConstructError::NotAutomorphism { .. } => "twist-auto",
            RelativeConstructError::NotEndomorphism { .. } => "twist-endo",
            RelativeConstructError::TwistHypothesis { .. } => "twist-conj",
            RelativeConstructError::Budget(_) => "budget",
        }
    }
}

impl fmt::Display for RelativeConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeConstructError::Shape(inner) => write!(f, "construct-shape ({inner})"),
            RelativeConstructError::NotStrong { witness } => {
                write!(f, "C5 witness={}", Witness::from(*witness))
            }
            RelativeConstructError::NotBijective => {
                write!(f, "bijective (the operator must be a bijection)")
            }
            RelativeConstructError::NotAutomorphism { witness } => {
                write!(f, "twist-auto witness={witness}")
            }
            RelativeConstructError::NotEndomorphism { witness } => {
                write!(f, "twist-endo witness={}", Witness::from(*witness))
            }
            RelativeConstructError::TwistHypothesis { witness } => {
                write!(f, "twist-conj witness={}", Witness::from(*witness))
            }
            RelativeConstructError::Budget(inner) => write!(f, "budget ({inner})"),
        }
    }
}

/// For a bijective operator, verifies the pair `(id_T, R)` as a system
/// isomorphism from the tautological system of `to_post(sys)` back to
/// `sys`: `R` is an additive bijection of the acting semigroups that
/// intertwines the operators and the actions.
pub fn natural_iso_check(sys: &RelativeRbSystem) -> Result<(), RelativeConstructError> {
    if !sys.r().is_bijective() {
        return Err(RelativeConstructError::NotBijective);
    }
    let rebuilt = from_post(&to_post(sys));
    let n = sys.t().order();
    assert_eq!(
        homomorphism_failure(sys.r(), rebuilt.s().base(), sys.s().base()),
        None,
        "R is additive from the rebuilt acting semigroup"
    );
    for a in 0..n {
        assert_eq!(sys.apply_r(rebuilt.apply_r(a)), sys.apply_r(a), "operators intertwine");
    }
    for x in 0..n {
        for b in 0..n {
            assert_eq!(rebuilt.phi(x, b), sys.phi(sys.apply_r(x), b), "actions intertwine");
        }
    }
    Ok(())
}

/// The Yang–Baxter solution of a valid system:
///
/// ```text
/// r(a, b) = (a⁰ + w,  φ_{-R(w)}(-w + a + w))     with w = φ_{R(a)}(b)
/// ```
///
/// Asserts the braid relation and agreement with the post route.
pub fn ybe_from_relative(sys: &RelativeRbSystem) -> YbeMap {
    let t = sys.t();
    let s = sys.s();
    let r = YbeMap::from_fn(t.order(), |a, b| {
        let w = sys.phi(sys.apply_r(a), b);
        let out1 = t.add(t.zero(a), w);
        let inner = t.add(t.add(t.neg(w), a), w);
        let out2 = sys.phi(s.neg(sys.apply_r(w)), inner);
        (out1, out2)
    });
    r.assert_solution("relative");
    assert!(
        r.table_eq(&crate::post::ybe_from_post(&to_post(sys))),
        "the post route emits the same solution"
    );
    r
}

/// Twists a system by a compatible pair: `φ_auto ∈ Aut(T, +)` and
/// `ψ ∈ End(S, +)` with `φ_auto⁻¹ ∘ φ_x ∘ φ_auto = φ_{ψ(x)}` for every
/// `x ∈ S`. The twisted operator is `ψ ∘ R ∘ φ_auto` over the same
/// action; its axioms and strong flag are re-derived by validation, not
/// assumed.
pub fn twist(
    sys: &RelativeRbSystem,
    phi_auto: &ElementMap,
    psi: &ElementMap,
) -> Result<RelativeRbSystem, RelativeConstructError> {
    let t = sys.t();
    let s = sys.s();
    if phi_auto.source_order() != t.order() || phi_auto.target_order() != t.order() {
        return Err(RelativeConstructError::Shape(MapError::LengthMismatch {
            len: phi_auto.source_order(),
            expected: t.order(),
        }));
    }
    if psi.source_order() != s.order() || psi.target_order() != s.order() {
        return Err(RelativeConstructError::Shape(MapError::LengthMismatch {
            len: psi.source_order(),
            expected: s.order(),
        }));
    }
    if !phi_auto.is_bijective() {
        let slice = phi_auto.as_slice();
        let witness = (0..slice.len())
            .find_map(|i| (i + 1..slice.len()).find(|&j| slice[i] == slice[j]).map(|j| (i, j)))
            .expect("a non-bijective endomap has a collision");
        return Err(RelativeConstructError::NotAutomorphism { witness: witness.into() });
    }
    if let Some(witness) = homomorphism_failure(phi_auto, t.base(), t.base()) {
        return Err(RelativeConstructError::NotAutomorphism { witness: witness.into() });
    }
    if let Some(witness) = homomorphism_failure(psi, s.base(), s.base()) {
        return Err(RelativeConstructError::NotEndomorphism { witness });
    }
    let inverse = phi_auto.inverse().expect("bijectivity checked above");
    for x in 0..s.order() {
        let conjugated = inverse.compose(&sys.action().map(x).compose(phi_auto));
        if conjugated.as_slice() != sys.action().map(psi.apply(x)).as_slice() {
            return Err(RelativeConstructError::TwistHypothesis { witness: x });
        }
    }
    let twisted = psi.compose(&sys.r().compose(phi_auto));
    Ok(check_relative(sys.action(), &twisted).expect("the twisted operator satisfies the axioms"))
}

/// Which carrier a sub-structure failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemPart {
    T,
    S,
}

impl fmt::Display for SystemPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemPart::T => write!(f, "T"),
            SystemPart::S => write!(f, "S"),
        }
    }
}

/// Why a pair `(M, N)` fails to be an ideal of a system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    /// `M` (in `T`) or `N` (in `S`) is not a Clifford subsemigroup.
    NotSubsemigroup { part: SystemPart, inner: RestrictError },
    /// `R(M) ⊄ N`; the witness is the escaping member.
    ImageEscapes { witness: usize },
    /// `φ_n(M) ⊄ M` for some `n ∈ N`; witness `(n, m)`.
    RestrictedActionEscapes { witness: (usize, usize) },
    /// I1: `M` or `N` is not normal in its carrier.
    NotNormal { part: SystemPart, inner: NormalityError },
    /// I2: `φ_x(M) ⊄ M` for some `x ∈ S`; witness `(x, m)`.
    ActionEscapes { witness: (usize, usize) },
    /// I3: `φ_n(t) - t ∉ M`; witness `(n, t)`.
    Displacement { witness: (usize, usize) },
    /// I4: members of `N` sharing an idempotent part move an idempotent
    /// of `T` differently; witness `(n₁, n₂, e)`.
    IdempotentCollision { witness: (usize, usize, usize) },
}

impl IdealError {
    pub fn code(&self) -> String {
        match self {
            IdealError::NotSubsemigroup { part, .. } => format!("ideal-sub-{part}"),
            IdealError::ImageEscapes { .. } => "ideal-image".to_string(),
            IdealError::RestrictedActionEscapes { .. } => "ideal-action".to_string(),
            IdealError::NotNormal { part, .. } => format!("I1-{part}"),
            IdealError::ActionEscapes { .. } => "I2".to_string(),
            IdealError::Displacement { .. } => "I3".to_string(),
            IdealError::IdempotentCollision { .. } => "I4".to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            IdealError::NotSubsemigroup { ref inner, .. } => match *inner {
                RestrictError::Empty => Witness::One(0),
                RestrictError::OutOfRange { member } => member.into(),
                RestrictError::NotClosed { a, b } => (a, b).into(),
                RestrictError::NegationEscapes { member } => member.into(),
            },
            IdealError::ImageEscapes { witness } => witness.into(),
            IdealError::RestrictedActionEscapes { witness } => witness.into(),
            IdealError::NotNormal { ref inner, .. } => inner.witness(),
            IdealError::ActionEscapes { witness } => witness.into(),
            IdealError::Displacement { witness } => witness.into(),
            IdealError::IdempotentCollision { witness } => witness.into(),
        }
    }
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::NotSubsemigroup { inner, .. } => write!(f, "{} ({inner})", self.code()),
            IdealError::NotNormal { inner, .. } => write!(f, "{} ({inner})", self.code()),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

/// A quotient system together with its class data. Classes are listed
/// in order of their smallest member; projections send elements to
/// class indices.
#[derive(Debug, Clone)]
pub struct RelativeQuotient {
    pub system: RelativeRbSystem,
    pub t_classes: Vec<Vec<usize>>,
    pub s_classes: Vec<Vec<usize>>,
    pub t_projection: ElementMap,
    pub s_projection: ElementMap,
}

/// Validates `(m_members, n_members)` as an ideal of `sys` — Clifford
/// subsemigroups with `R(M) ⊆ N` and `φ_N(M) ⊆ M`, then I1 (normality),
/// I2 (global action stability), I3 (displacements land in `M`), I4
/// (idempotent parts act uniformly on idempotents) — and builds the
/// quotient system. Representative independence of the quotient action
/// and operator is asserted, the quotient is re-validated, and the
/// quotient of the descendent brace by `M` is asserted to coincide with
/// the descendent of the quotient.
pub fn ideal_and_quotient(
    sys: &RelativeRbSystem,
    m_members: &[usize],
    n_members: &[usize],
) -> Result<RelativeQuotient, IdealError> {
    let t = sys.t();
    let s = sys.s();
    let sub_m = t
        .restrict(m_members)
        .map_err(|inner| IdealError::NotSubsemigroup { part: SystemPart::T, inner })?;
    let sub_n = s
        .restrict(n_members)
        .map_err(|inner| IdealError::NotSubsemigroup { part: SystemPart::S, inner })?;
    // Sorted and deduplicated, so later witnesses are the smallest ones.
    let m_members = sub_m.members.as_slice();
    let n_members = sub_n.members.as_slice();
    let mut in_m = vec![false; t.order()];
    for &m in m_members {
        in_m[m] = true;
    }
    let mut in_n = vec![false; s.order()];
    for &x in n_members {
        in_n[x] = true;
    }
    for &m in m_members {
        if !in_n[sys.apply_r(m)] {
            return Err(IdealError::ImageEscapes { witness: m });
        }
    }
    for &x in n_members {
        for &m in m_members {
            if !in_m[sys.phi(x, m)] {
                return Err(IdealError::RestrictedActionEscapes { witness: (x, m) });
            }
        }
    }
    let norm_m = NormalSubsemigroup::new(t, m_members)
        .map_err(|inner| IdealError::NotNormal { part: SystemPart::T, inner })?;
    let norm_n = NormalSubsemigroup::new(s, n_members)
        .map_err(|inner| IdealError::NotNormal { part: SystemPart::S, inner })?;
    for x in 0..s.order() {
        for &m in m_members {
            if !in_m[sys.phi(x, m)] {
                return Err(IdealError::ActionEscapes { witness: (x, m) });
            }
        }
    }
    for &x in n_members {
        for a in 0..t.order() {
            if !in_m[t.sub(sys.phi(x, a), a)] {
                return Err(IdealError::Displacement { witness: (x, a) });
            }
        }
    }
    for &n1 in n_members {
        for &n2 in n_members {
            if s.zero(n1) != s.zero(n2) {
                continue;
            }
            for &e in t.idempotents() {
                if sys.phi(n1, e) != sys.phi(n2, e) {
                    return Err(IdealError::IdempotentCollision { witness: (n1, n2, e) });
                }
            }
        }
    }

    let q_t = quotient(t, &norm_m);
    let q_s = quotient(s, &norm_n);
    let t_class = |a: usize| q_t.projection.apply(a);
    let s_class = |x: usize| q_s.projection.apply(x);

    // Representative independence — a consequence of I1–I4, asserted
    // rather than trusted.
    for (xc, x_class) in q_s.classes.iter().enumerate() {
        for (bc, b_class) in q_t.classes.iter().enumerate() {
            let value = t_class(sys.phi(q_s.classes[xc][0], q_t.classes[bc][0]));
            for &x in x_class {
                for &b in b_class {
                    assert_eq!(t_class(sys.phi(x, b)), value, "quotient action well-defined");
                }
            }
        }
    }
    for b_class in &q_t.classes {
        let value = s_class(sys.apply_r(b_class[0]));
        for &b in b_class {
            assert_eq!(s_class(sys.apply_r(b)), value, "quotient operator well-defined");
        }
    }

    let qt_order = q_t.table.order();
    let qs_order = q_s.table.order();
    let maps_q = (0..qs_order)
        .map(|xc| {
            let rep = q_s.classes[xc][0];
            let images =
                (0..qt_order).map(|bc| t_class(sys.phi(rep, q_t.classes[bc][0]))).collect();
            ElementMap::endo(qt_order, images).expect("classes are in range")
        })
        .collect();
    let action_q = Action::new(q_t.table.clone(), q_s.table.clone(), maps_q)
        .expect("the quotient family is an action");
    let r_q = ElementMap::new(
        qt_order,
        qs_order,
        (0..qt_order).map(|bc| s_class(sys.apply_r(q_t.classes[bc][0]))).collect(),
    )
    .expect("classes are in range");
    let system =
        check_relative(&action_q, &r_q).expect("the quotient system satisfies the axioms");

    // The brace quotient by M coincides with the descendent of the
    // quotient system.
    let brace = descendent(sys);
    let ideal = BraceIdeal::new(&brace, m_members).expect("a system ideal is a brace ideal");
    let bq = quotient_brace(&brace, &ideal);
    assert_eq!(bq.classes, q_t.classes, "both quotients share the class partition");
    let q_brace = descendent(&system);
    assert!(bq.brace.add_table().base().table_eq(q_brace.add_table().base()));
    assert!(bq.brace.circ_table().base().table_eq(q_brace.circ_table().base()));

    Ok(RelativeQuotient {
        system,
        t_classes: q_t.classes,
        s_classes: q_s.classes,
        t_projection: q_t.projection,
        s_projection: q_s.projection,
    })
}

/// Lexicographic generator of all `target^len` value sequences.
struct Odometer {
    len: usize,
    target: usize,
    next: Option<Vec<usize>>,
}

impl Odometer {
    fn new(len: usize, target: usize) -> Odometer {
        let next = if target == 0 && len > 0 { None } else { Some(vec![0; len]) };
        Odometer { len, target, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut bump = current.clone();
        let mut i = self.len;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            bump[i] += 1;
            if bump[i] < self.target {
                self.next = Some(bump);
                break;
            }
            bump[i] = 0;
        }
        Some(current)
    }
}

/// The two homomorphism inventories of [`hom_correspondence`], each in
/// lexicographic order of the underlying value sequences.
#[derive(Debug, Clone)]
pub struct HomCorrespondence {
    /// Brace homomorphisms between the descendent braces.
    pub brace_homs: Vec<ElementMap>,
    /// System homomorphism pairs `(ψ, η)`: additive maps intertwining
    /// the operators and the actions.
    pub system_homs: Vec<(ElementMap, ElementMap)>,
}

/// For strong systems whose first operator is bijective, enumerates
/// both homomorphism inventories and asserts that
/// `ψ ↦ (ψ, R_b ∘ ψ ∘ R_a⁻¹)` is a bijection between them.
pub fn hom_correspondence(
    sys_a: &RelativeRbSystem,
    sys_b: &RelativeRbSystem,
    budget: &EnumBudget,
) -> Result<HomCorrespondence, RelativeConstructError> {
    if let Some(witness) = sys_a.strong_failure() {
        return Err(RelativeConstructError::NotStrong { witness });
    }
    if let Some(witness) = sys_b.strong_failure() {
        return Err(RelativeConstructError::NotStrong { witness });
    }
    if !sys_a.r().is_bijective() {
        return Err(RelativeConstructError::NotBijective);
    }
    let nt = sys_a.t().order();
    let mt = sys_b.t().order();
    let ns = sys_a.s().order();
    let ms = sys_b.s().order();
    let work = (mt as u64)
        .checked_pow(nt as u32)
        .zip((ms as u64).checked_pow(ns as u32))
        .and_then(|(a, b)| a.checked_add(b));
    match work {
        Some(w) if w <= budget.max_nodes => {}
        _ => {
            return Err(RelativeConstructError::Budget(EnumError::NodeBudget {
                max_nodes: budget.max_nodes,
            }))
        }
    }

    let brace_a = descendent(sys_a);
    let brace_b = descendent(sys_b);

    let mut additive_t = Vec::new();
    let mut brace_homs = Vec::new();
    for seq in Odometer::new(nt, mt) {
        let f = ElementMap::new(nt, mt, seq).expect("odometer stays in range");
        if homomorphism_failure(&f, sys_a.t().base(), sys_b.t().base()).is_none() {
            if is_brace_hom(&f, &brace_a, &brace_b).is_hom() {
                brace_homs.push(f.clone());
            }
            additive_t.push(f);
        }
    }
    let mut additive_s = Vec::new();
    for seq in Odometer::new(ns, ms) {
        let f = ElementMap::new(ns, ms, seq).expect("odometer stays in range");
        if homomorphism_failure(&f, sys_a.s().base(), sys_b.s().base()).is_none() {
            additive_s.push(f);
        }
    }
    let mut system_homs = Vec::new();
    for psi in &additive_t {
        for eta in &additive_s {
            let operators_commute =
                (0..nt).all(|a| eta.apply(sys_a.apply_r(a)) == sys_b.apply_r(psi.apply(a)));
            let actions_commute = (0..ns).all(|x| {
                (0..nt).all(|b| psi.apply(sys_a.phi(x, b)) == sys_b.phi(eta.apply(x), psi.apply(b)))
            });
            if operators_commute && actions_commute {
                system_homs.push((psi.clone(), eta.clone()));
            }
        }
    }

    let r_inv = sys_a.r().inverse().expect("bijectivity gated above");
    assert_eq!(brace_homs.len(), system_homs.len(), "the correspondence is a bijection");
    for psi in &brace_homs {
        let eta = sys_b.r().compose(&psi.compose(&r_inv));
        assert!(
            system_homs.iter().any(|(p, e)| p == psi && *e == eta),
            "every brace homomorphism lifts to a system pair"
        );
    }
    for (psi, eta) in &system_homs {
        assert!(brace_homs.contains(psi), "every system pair projects to a brace homomorphism");
        assert_eq!(*eta, sys_b.r().compose(&psi.compose(&r_inv)), "η is determined by ψ");
    }
    Ok(HomCorrespondence { brace_homs, system_homs })
}
