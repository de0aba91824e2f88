//! Validated Clifford tables.
//!
//! A [`CliffordTable`] wraps a [`FiniteSemigroup`] that classified as
//! Clifford and caches everything downstream code asks for constantly:
//! negation, idempotent parts, the group components `H_a = {x : x⁰ = a⁰}`,
//! and the full strong-semilattice decomposition (idempotent poset, group
//! components, structure maps `φ(a) = e + a`).
//!
//! Construction re-derives and *asserts* the standard identity suite
//! (`-(a+b) = -b-a`, `(a+b)⁰ = a⁰+b⁰`, central idempotent parts,
//! `(-a)⁰ = a⁰`, structure maps commuting with negation and idempotent
//! part, exact reassembly of the table from the decomposition). These are
//! theorems of the classification, so a failure here is a bug, not input.

use crate::semigroup::{ElementMap, FiniteSemigroup};
use crate::witness::{fmt_code_witness, Witness};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A Clifford semigroup with cached structure. Obtained from
/// [`FiniteSemigroup::classify`] or [`FiniteSemigroup::expect_clifford`].
#[derive(Debug, Clone)]
pub struct CliffordTable {
    base: FiniteSemigroup,
    neg: Vec<usize>,
    zero: Vec<usize>,
    idempotents: Vec<usize>,
    component_of: Vec<usize>,
    position_in_component: Vec<usize>,
    components: Vec<Vec<usize>>,
    decomposition: SemilatticeDecomposition,
}

/// Strong-semilattice decomposition of a Clifford table: the idempotent
/// meet-semilattice, one group per idempotent, and the structure maps
/// between comparable components.
#[derive(Debug, Clone)]
pub struct SemilatticeDecomposition {
    /// Sorted idempotents; positions in this list index everything else.
    pub idempotents: Vec<usize>,
    /// `meet[i][j]` is the position of `idempotents[i] + idempotents[j]`.
    pub meet: Vec<Vec<usize>>,
    /// Sorted members of each group component (global element ids).
    pub groups: Vec<Vec<usize>>,
    /// Local Cayley table of each group component.
    pub group_tables: Vec<FiniteSemigroup>,
    /// Structure maps keyed `(upper, lower)` for comparable positions
    /// (`idempotents[lower] ≤ idempotents[upper]`); entry `k` is the
    /// global image of the `k`-th member of `groups[upper]`.
    maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SemilatticeDecomposition {
    /// `e_i ≤ e_j` in the natural partial order (`e + f = e`).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet[i][j] == i
    }

    /// Structure map from component `upper` down to component `lower`,
    /// as global images of `groups[upper]` in order; `None` when the
    /// components are not comparable that way.
    pub fn structure_map(&self, upper: usize, lower: usize) -> Option<&[usize]> {
        self.maps.get(&(upper, lower)).map(Vec::as_slice)
    }
}

impl CliffordTable {
    /// Assembles caches from a table already known to be Clifford with
    /// the given von Neumann inverses, asserting the derived identity
    /// suite along the way. Called by `FiniteSemigroup::classify`.
    pub(crate) fn assemble(base: FiniteSemigroup, neg: Vec<usize>) -> CliffordTable {
        let n = base.order();
        let zero: Vec<usize> = (0..n).map(|a| base.add(neg[a], a)).collect();
        let idempotents: Vec<usize> = (0..n).filter(|&e| base.add(e, e) == e).collect();

        // Identity suite on negation and idempotent parts.
        for a in 0..n {
            assert_eq!(neg[neg[a]], a, "negation must be an involution");
            assert_eq!(zero[a], base.add(a, neg[a]), "idempotent parts must agree");
            assert_eq!(zero[neg[a]], zero[a], "(-a)'s idempotent part must equal a's");
            assert!(
                idempotents.binary_search(&zero[a]).is_ok(),
                "idempotent part must be idempotent"
            );
        }
        for &e in &idempotents {
            assert_eq!(neg[e], e, "idempotents are self-inverse");
            for x in 0..n {
                assert_eq!(base.add(e, x), base.add(x, e), "idempotents must be central");
            }
        }
        for a in 0..n {
            for b in 0..n {
                let s = base.add(a, b);
                assert_eq!(neg[s], base.add(neg[b], neg[a]), "-(a+b) must be -b-a");
                assert_eq!(zero[s], base.add(zero[a], zero[b]), "(a+b)'s part must be a⁰+b⁰");
            }
        }

        // Group components, indexed by the position of their idempotent.
        let component_of: Vec<usize> = (0..n)
            .map(|a| idempotents.binary_search(&zero[a]).expect("part is idempotent"))
            .collect();
        let mut components: Vec<Vec<usize>> = vec![Vec::new(); idempotents.len()];
        for a in 0..n {
            components[component_of[a]].push(a);
        }
        let mut position_in_component = vec![0usize; n];
        for comp in &components {
            for (k, &a) in comp.iter().enumerate() {
                position_in_component[a] = k;
            }
        }
        for (i, comp) in components.iter().enumerate() {
            let e = idempotents[i];
            for &a in comp {
                assert_eq!(base.add(e, a), a, "component idempotent must act as identity");
                assert_eq!(component_of[neg[a]], i, "negation must stay in the component");
                for &b in comp {
                    assert_eq!(component_of[base.add(a, b)], i, "components must be closed");
                }
            }
        }

        let decomposition = Self::decompose_parts(
            &base,
            &neg,
            &zero,
            &idempotents,
            &component_of,
            &position_in_component,
            &components,
        );

        let ct = CliffordTable {
            base,
            neg,
            zero,
            idempotents,
            component_of,
            position_in_component,
            components,
            decomposition,
        };
        ct.assert_reassembly();
        ct
    }

    fn decompose_parts(
        base: &FiniteSemigroup,
        neg: &[usize],
        zero: &[usize],
        idempotents: &[usize],
        component_of: &[usize],
        position_in_component: &[usize],
        components: &[Vec<usize>],
    ) -> SemilatticeDecomposition {
        let k = idempotents.len();
        let mut meet = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let m = base.add(idempotents[i], idempotents[j]);
                meet[i][j] = idempotents
                    .binary_search(&m)
                    .expect("sum of idempotents is idempotent");
            }
        }

        let group_tables: Vec<FiniteSemigroup> = components
            .iter()
            .map(|comp| {
                FiniteSemigroup::from_fn(comp.len(), |x, y| {
                    position_in_component[base.add(comp[x], comp[y])]
                })
                .expect("component restriction is a valid table")
            })
            .collect();

        let mut maps = BTreeMap::new();
        for upper in 0..k {
            for lower in 0..k {
                if meet[upper][lower] != lower {
                    continue; // not comparable as lower ≤ upper
                }
                let e = idempotents[lower];
                let image: Vec<usize> =
                    components[upper].iter().map(|&a| base.add(e, a)).collect();
                for (pos, &fa) in image.iter().enumerate() {
                    let a = components[upper][pos];
                    assert_eq!(component_of[fa], lower, "structure map must land downstairs");
                    assert_eq!(neg[fa], base.add(e, neg[a]), "structure map must commute with -");
                    assert_eq!(zero[fa], base.add(e, zero[a]), "structure map must commute with ⁰");
                }
                for &a in &components[upper] {
                    for &b in &components[upper] {
                        let lhs = base.add(e, base.add(a, b));
                        let rhs = base.add(base.add(e, a), base.add(e, b));
                        assert_eq!(lhs, rhs, "structure map must be a homomorphism");
                    }
                }
                maps.insert((upper, lower), image);
            }
        }
        // Composition along chains: dropping in two steps equals one.
        for (&(i, j), map_ij) in &maps {
            for l in 0..k {
                if meet[j][l] != l {
                    continue;
                }
                let map_jl = &maps[&(j, l)];
                let map_il = &maps[&(i, l)];
                for (pos, &mid) in map_ij.iter().enumerate() {
                    let via = map_jl[position_in_component[mid]];
                    assert_eq!(via, map_il[pos], "structure maps must compose along chains");
                }
            }
        }

        SemilatticeDecomposition {
            idempotents: idempotents.to_vec(),
            meet,
            groups: components.to_vec(),
            group_tables,
            maps,
        }
    }

    /// The decomposition must reproduce the original addition: map both
    /// operands down to the meet component and multiply there.
    fn assert_reassembly(&self) {
        let n = self.order();
        let d = &self.decomposition;
        for a in 0..n {
            for b in 0..n {
                let (ca, cb) = (self.component_of[a], self.component_of[b]);
                let m = d.meet[ca][cb];
                let fa = d.maps[&(ca, m)][self.position_in_component[a]];
                let fb = d.maps[&(cb, m)][self.position_in_component[b]];
                let local = d.group_tables[m]
                    .add(self.position_in_component[fa], self.position_in_component[fb]);
                assert_eq!(
                    d.groups[m][local],
                    self.add(a, b),
                    "decomposition must reassemble the table"
                );
            }
        }
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.base.add(a, b)
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.base.add(a, self.neg[b])
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// The idempotent part `a⁰ = -a + a = a - a`.
    #[inline]
    pub fn zero(&self, a: usize) -> usize {
        self.zero[a]
    }

    /// Left-to-right sum of a nonempty chain of elements.
    pub fn sum(&self, terms: &[usize]) -> usize {
        let mut acc = terms[0];
        for &t in &terms[1..] {
            acc = self.add(acc, t);
        }
        acc
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.add(a, a) == a
    }

    /// Members of `a`'s group component, sorted.
    pub fn component_members(&self, a: usize) -> &[usize] {
        &self.components[self.component_of[a]]
    }

    /// True when `a` commutes with every element.
    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|x| self.add(a, x) == self.add(x, a))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.is_central(a)).collect()
    }

    /// True when the table is a group (single idempotent).
    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    /// The strong-semilattice decomposition (precomputed and verified at
    /// construction, including exact reassembly of the table).
    pub fn decompose(&self) -> &SemilatticeDecomposition {
        &self.decomposition
    }

    /// Restricts to a subset that must be closed under `+` and `-`.
    /// The restriction of a Clifford table is again Clifford.
    pub fn restrict(&self, members: &[usize]) -> Result<SubClifford, RestrictError> {
        let n = self.order();
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(RestrictError::Empty);
        }
        if let Some(&bad) = sorted.iter().find(|&&m| m >= n) {
            return Err(RestrictError::OutOfRange { member: bad });
        }
        let local_of = |g: usize| sorted.binary_search(&g).ok();
        for &a in &sorted {
            if local_of(self.neg[a]).is_none() {
                return Err(RestrictError::NegationEscapes { member: a });
            }
            for &b in &sorted {
                if local_of(self.add(a, b)).is_none() {
                    return Err(RestrictError::NotClosed { a, b });
                }
            }
        }
        let sub = FiniteSemigroup::from_fn(sorted.len(), |x, y| {
            local_of(self.add(sorted[x], sorted[y])).expect("closure checked")
        })
        .expect("restriction is a valid table");
        let table = sub
            .expect_clifford()
            .expect("closed inverse subsemigroup of a Clifford table is Clifford");
        Ok(SubClifford { table, members: sorted })
    }
}

/// A restriction of a [`CliffordTable`] to a closed subset, with the
/// index translation between local and global element ids.
#[derive(Debug, Clone)]
pub struct SubClifford {
    pub table: CliffordTable,
    pub members: Vec<usize>,
}

impl SubClifford {
    pub fn to_local(&self, global: usize) -> Option<usize> {
        self.members.binary_search(&global).ok()
    }

    pub fn to_global(&self, local: usize) -> usize {
        self.members[local]
    }
}

/// Failure modes of [`CliffordTable::restrict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error("empty member set")]
    Empty,
    #[error("member {member} out of range")]
    OutOfRange { member: usize },
    #[error("members {a} and {b} have a sum outside the set")]
    NotClosed { a: usize, b: usize },
    #[error("negation of member {member} lies outside the set")]
    NegationEscapes { member: usize },
}

impl RestrictError {
    pub fn witness(&self) -> Witness {
        match *self {
            RestrictError::Empty => Witness::One(0),
            RestrictError::OutOfRange { member } => member.into(),
            RestrictError::NotClosed { a, b } => (a, b).into(),
            RestrictError::NegationEscapes { member } => member.into(),
        }
    }
}

/// A validated normal subsemigroup: closed under `+` and `-`, contains
/// every idempotent of the ambient table, and is stable under
/// conjugation `n ↦ -a + n + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubsemigroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    ambient_order: usize,
}

/// Failure modes of [`NormalSubsemigroup::new`], with axiom codes used
/// verbatim in CLI failure lines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalityError {
    Empty,
    OutOfRange { member: usize },
    NotClosed { a: usize, b: usize },
    NegationEscapes { member: usize },
    MissingIdempotent { idempotent: usize },
    ConjugationEscapes { element: usize, member: usize },
}

impl NormalityError {
    pub fn code(&self) -> &'static str {
        match self {
            NormalityError::Empty => "norm-empty",
            NormalityError::OutOfRange { .. } => "norm-range",
            NormalityError::NotClosed { .. } => "norm-closed",
            NormalityError::NegationEscapes { .. } => "norm-neg",
            NormalityError::MissingIdempotent { .. } => "norm-idem",
            NormalityError::ConjugationEscapes { .. } => "norm-conj",
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            NormalityError::Empty => Witness::One(0),
            NormalityError::OutOfRange { member } => member.into(),
            NormalityError::NotClosed { a, b } => (a, b).into(),
            NormalityError::NegationEscapes { member } => member.into(),
            NormalityError::MissingIdempotent { idempotent } => idempotent.into(),
            NormalityError::ConjugationEscapes { element, member } => (element, member).into(),
        }
    }
}

impl fmt::Display for NormalityError {
    fmt_code_witness!();
}

impl NormalSubsemigroup {
    pub fn new(ambient: &CliffordTable, members: &[usize]) -> Result<Self, NormalityError> {
        let n = ambient.order();
        let mut sorted: Vec<usize> = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(NormalityError::Empty);
        }
        if let Some(&bad) = sorted.iter().find(|&&m| m >= n) {
            return Err(NormalityError::OutOfRange { member: bad });
        }
        let mut mask = vec![false; n];
        for &m in &sorted {
            mask[m] = true;
        }
        for &a in &sorted {
            if !mask[ambient.neg(a)] {
                return Err(NormalityError::NegationEscapes { member: a });
            }
            for &b in &sorted {
                if !mask[ambient.add(a, b)] {
                    return Err(NormalityError::NotClosed { a, b });
                }
            }
        }
        for &e in ambient.idempotents() {
            if !mask[e] {
                return Err(NormalityError::MissingIdempotent { idempotent: e });
            }
        }
        for a in 0..n {
            for &m in &sorted {
                let conj = ambient.add(ambient.add(ambient.neg(a), m), a);
                if !mask[conj] {
                    return Err(NormalityError::ConjugationEscapes { element: a, member: m });
                }
            }
        }
        Ok(NormalSubsemigroup { members: sorted, mask, ambient_order: n })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn ambient_order(&self) -> usize {
        self.ambient_order
    }
}

/// A quotient of a Clifford table by a normal subsemigroup: class `i`
/// is `classes[i]` (sorted members; classes ordered by smallest member),
/// and `projection` sends each element to its class.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: CliffordTable,
    pub classes: Vec<Vec<usize>>,
    pub projection: ElementMap,
}

/// Quotient by the congruence `a ~ b ⟺ a⁰ = b⁰ and -a + b ∈ N`.
///
/// The congruence laws, the Clifford property of the quotient, and the
/// projection being a homomorphism compatible with `-` and `⁰` are all
/// theorems here, so they are asserted rather than reported.
pub fn quotient(ambient: &CliffordTable, normal: &NormalSubsemigroup) -> Quotient {
    assert_eq!(normal.ambient_order(), ambient.order(), "normal subsemigroup of this table");
    let n = ambient.order();
    let rel = |a: usize, b: usize| {
        ambient.zero(a) == ambient.zero(b)
            && normal.contains(ambient.add(ambient.neg(a), b))
    };

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        let found = classes.iter().position(|cls| rel(cls[0], a));
        match found {
            Some(i) => {
                class_of[a] = i;
                classes[i].push(a);
            }
            None => {
                class_of[a] = classes.len();
                classes.push(vec![a]);
            }
        }
    }
    // The relation must be a genuine equivalence (theorem for normal N).
    for a in 0..n {
        for b in 0..n {
            assert_eq!(rel(a, b), class_of[a] == class_of[b], "relation must be an equivalence");
        }
    }
    let k = classes.len();
    let qsg = FiniteSemigroup::from_fn(k, |i, j| class_of[ambient.add(classes[i][0], classes[j][0])])
        .expect("quotient table is a valid table");
    // Congruence: the class of a sum depends only on the classes.
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                class_of[ambient.add(a, b)],
                qsg.add(class_of[a], class_of[b]),
                "normal subsemigroup must induce a congruence"
            );
        }
    }
    let table = qsg.expect_clifford().expect("quotient of a Clifford table is Clifford");
    for a in 0..n {
        assert_eq!(class_of[ambient.neg(a)], table.neg(class_of[a]), "projection respects -");
        assert_eq!(class_of[ambient.zero(a)], table.zero(class_of[a]), "projection respects ⁰");
    }
    let projection = ElementMap::new(n, k, class_of).expect("projection is a valid map");
    Quotient { table, classes, projection }
}
