//! Braided Clifford semigroups: a Clifford semigroup `(T, ∘)` with a
//! pair map `σ(a, b) = (a ⇀ b, a ↼ b)` satisfying
//!
//! ```text
//! B1  a⁰ ⇀ a = a
//! B2  a₁ ⇀ (a₂ ⇀ b) = (a₁ ∘ a₂) ⇀ b
//! B3  (a₁ ∘ a₂) ↼ b = (a₁ ↼ (a₂ ⇀ b)) ∘ (a₂ ↼ b)
//! B4  a ↼ a⁰ = a
//! B5  (a ↼ b₁) ↼ b₂ = a ↼ (b₁ ∘ b₂)
//! B6  a ⇀ (b₁ ∘ b₂) = (a ⇀ b₁) ∘ ((a ↼ b₁) ⇀ b₂)
//! B7  (a ⇀ b) ∘ (a ↼ b) = a ∘ b
//! B8  (a ⇀ b)⁰ = (a ↼ b)⁰
//! B9  a ∘ (a⁰ ⇀ b) = a ∘ b
//! ```
//!
//! [`check_braided`] validates the axioms in the fail-fast order B1, B4
//! (one index), then B2, B5, B7, B8, B9, then B3, B6, and asserts the
//! derived identities `(a⇀b)⁰ = (a↼b)⁰ = a⁰∘b⁰`, `a⁰∘(a⇀b) = a⇀b`,
//! `a⇀a⁰ = a⁰`, and `(a⇀b)⁻¹⇀(a⇀c) = (a↼b)⇀(b⁻¹⇀c)` on success.
//!
//! Braided tables and strong post tables are two presentations of the
//! same data: [`from_post`] sends any post table to `⇀ = a⁰+(a▷b)`,
//! `↼ = (a▷b)⁻¹∘a∘b` over the sub-adjacent product, and [`to_post`]
//! recovers `a + b = a∘(a⁻¹⇀b)`, `▷ = ⇀`, which is always strong. The
//! round trip is the identity in both directions — exactly on strong
//! tables for post → braided → post ([`post_braided_roundtrip`]), and
//! unconditionally the other way ([`braided_post_roundtrip`]). σ itself
//! is a Yang–Baxter solution ([`sigma_as_ybe`]).

use crate::clifford::CliffordTable;
use crate::post::{check_post, sub_adjacent, ybe_from_post, PostTable, RoundtripError};
use crate::semigroup::{FiniteSemigroup, MapError, NotCliffordError};
use crate::witness::Witness;
use crate::ybe::YbeMap;
use std::fmt;
use thiserror::Error;

/// A validated braided Clifford semigroup: `(T, ∘)` plus the two
/// halves of `σ` as row-major tables.
#[derive(Debug, Clone)]
pub struct BraidedTable {
    circ: CliffordTable,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl BraidedTable {
    pub fn order(&self) -> usize {
        self.circ.order()
    }

    /// The validated Clifford table of `∘`.
    pub fn circ_table(&self) -> &CliffordTable {
        &self.circ
    }

    /// `a ∘ b`.
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.add(a, b)
    }

    /// `a ⇀ b`.
    pub fn left(&self, a: usize, b: usize) -> usize {
        self.left[a * self.order() + b]
    }

    /// `a ↼ b`.
    pub fn right(&self, a: usize, b: usize) -> usize {
        self.right[a * self.order() + b]
    }

    pub fn left_flat(&self) -> &[usize] {
        &self.left
    }

    pub fn right_flat(&self) -> &[usize] {
        &self.right
    }

    pub fn left_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| self.left[a * n..(a + 1) * n].to_vec()).collect()
    }

    pub fn right_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| self.right[a * n..(a + 1) * n].to_vec()).collect()
    }
}

/// The nine axiom identifiers, used verbatim in failure lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidedAxiom {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
}

impl BraidedAxiom {
    pub fn code(&self) -> &'static str {
        match self {
            BraidedAxiom::B1 => "B1",
            BraidedAxiom::B2 => "B2",
            BraidedAxiom::B3 => "B3",
            BraidedAxiom::B4 => "B4",
            BraidedAxiom::B5 => "B5",
            BraidedAxiom::B6 => "B6",
            BraidedAxiom::B7 => "B7",
            BraidedAxiom::B8 => "B8",
            BraidedAxiom::B9 => "B9",
        }
    }
}

impl fmt::Display for BraidedAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// First failing requirement of [`check_braided`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidedFailure {
    /// One of the `σ` tables has the wrong length or an out-of-range
    /// entry.
    Shape(MapError),
    /// `∘` is not a Clifford operation.
    CircNotClifford(NotCliffordError),
    /// The first violated axiom with its smallest witness.
    Axiom { axiom: BraidedAxiom, witness: Witness },
}

impl BraidedFailure {
    pub fn code(&self) -> String {
        match self {
            BraidedFailure::Shape(_) => "braided-shape".to_string(),
            BraidedFailure::CircNotClifford(inner) => format!("circ-{}", inner.code()),
            BraidedFailure::Axiom { axiom, .. } => axiom.code().to_string(),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            BraidedFailure::Shape(MapError::LengthMismatch { len, .. }) => len.into(),
            BraidedFailure::Shape(MapError::ValueOutOfRange { index, .. }) => index.into(),
            BraidedFailure::CircNotClifford(ref inner) => inner.witness(),
            BraidedFailure::Axiom { witness, .. } => witness,
        }
    }
}

impl fmt::Display for BraidedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidedFailure::Shape(inner) => write!(f, "braided-shape ({inner})"),
            _ => write!(f, "{} witness={}", self.code(), self.witness()),
        }
    }
}

fn shape_check(table: &[usize], n: usize) -> Result<(), BraidedFailure> {
    if table.len() != n * n {
        return Err(BraidedFailure::Shape(MapError::LengthMismatch {
            len: table.len(),
            expected: n * n,
        }));
    }
    for (index, &value) in table.iter().enumerate() {
        if value >= n {
            return Err(BraidedFailure::Shape(MapError::ValueOutOfRange {
                index,
                value,
                target: n,
            }));
        }
    }
    Ok(())
}

/// Validates `(circ, left, right)` as a braided Clifford semigroup,
/// reporting the first violated axiom in the order B1, B4, B2, B5, B7,
/// B8, B9, B3, B6 with its smallest witness. On success the derived
/// identity suite listed in the module docs is asserted.
pub fn check_braided(
    circ: &FiniteSemigroup,
    left: &[usize],
    right: &[usize],
) -> Result<BraidedTable, BraidedFailure> {
    let n = circ.order();
    shape_check(left, n)?;
    shape_check(right, n)?;
    let ct = circ.expect_clifford().map_err(BraidedFailure::CircNotClifford)?;
    let l = |a: usize, b: usize| left[a * n + b];
    let r = |a: usize, b: usize| right[a * n + b];
    let fail = |axiom: BraidedAxiom, witness: Witness| BraidedFailure::Axiom { axiom, witness };

    for a in 0..n {
        if l(ct.zero(a), a) != a {
            return Err(fail(BraidedAxiom::B1, a.into()));
        }
    }
    for a in 0..n {
        if r(a, ct.zero(a)) != a {
            return Err(fail(BraidedAxiom::B4, a.into()));
        }
    }
    for a1 in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                if l(a1, l(a2, b)) != l(ct.add(a1, a2), b) {
                    return Err(fail(BraidedAxiom::B2, (a1, a2, b).into()));
                }
            }
        }
    }
    for a in 0..n {
        for b1 in 0..n {
            for b2 in 0..n {
                if r(r(a, b1), b2) != r(a, ct.add(b1, b2)) {
                    return Err(fail(BraidedAxiom::B5, (a, b1, b2).into()));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if ct.add(l(a, b), r(a, b)) != ct.add(a, b) {
                return Err(fail(BraidedAxiom::B7, (a, b).into()));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if ct.zero(l(a, b)) != ct.zero(r(a, b)) {
                return Err(fail(BraidedAxiom::B8, (a, b).into()));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if ct.add(a, l(ct.zero(a), b)) != ct.add(a, b) {
                return Err(fail(BraidedAxiom::B9, (a, b).into()));
            }
        }
    }
    for a1 in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                if r(ct.add(a1, a2), b) != ct.add(r(a1, l(a2, b)), r(a2, b)) {
                    return Err(fail(BraidedAxiom::B3, (a1, a2, b).into()));
                }
            }
        }
    }
    for a in 0..n {
        for b1 in 0..n {
            for b2 in 0..n {
                if l(a, ct.add(b1, b2)) != ct.add(l(a, b1), l(r(a, b1), b2)) {
                    return Err(fail(BraidedAxiom::B6, (a, b1, b2).into()));
                }
            }
        }
    }

    // Derived identities, consequences of the axioms.
    for a in 0..n {
        assert_eq!(l(a, ct.zero(a)), ct.zero(a), "a ⇀ a⁰ = a⁰");
        for b in 0..n {
            let idem = ct.add(ct.zero(a), ct.zero(b));
            assert_eq!(ct.zero(l(a, b)), idem, "(a ⇀ b)⁰ = a⁰ ∘ b⁰");
            assert_eq!(ct.zero(r(a, b)), idem, "(a ↼ b)⁰ = a⁰ ∘ b⁰");
            assert_eq!(ct.add(ct.zero(a), l(a, b)), l(a, b), "a⁰ ∘ (a ⇀ b) = a ⇀ b");
            for c in 0..n {
                assert_eq!(
                    l(ct.neg(l(a, b)), l(a, c)),
                    l(r(a, b), l(ct.neg(b), c)),
                    "(a⇀b)⁻¹ ⇀ (a⇀c) = (a↼b) ⇀ (b⁻¹⇀c)"
                );
            }
        }
    }
    Ok(BraidedTable { circ: ct, left: left.to_vec(), right: right.to_vec() })
}

/// The braided structure of a post table, over its sub-adjacent
/// product:
///
/// ```text
/// a ⇀ b = a⁰ + (a ▷ b)         a ↼ b = (a ▷ b)⁻¹ ∘ a ∘ b
/// ```
///
/// Valid for every post table. For strong tables, `σ` is asserted to
/// coincide with the solution emitted directly from the post table.
pub fn from_post(p: &PostTable) -> BraidedTable {
    let n = p.order();
    let t = p.add_table();
    let circ = sub_adjacent(p);
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let w = p.rhd(a, b);
            left.push(t.add(t.zero(a), w));
            right.push(circ.add(circ.add(circ.neg(w), a), b));
        }
    }
    let braided = check_braided(circ.base(), &left, &right)
        .expect("post tables induce braided structures");
    let sigma = sigma_as_ybe(&braided);
    if p.is_strong() {
        assert!(
            sigma.table_eq(&ybe_from_post(p)),
            "σ matches the solution emitted from the post table"
        );
    }
    braided
}

/// The post table of a braided structure: `a + b = a ∘ (a⁻¹ ⇀ b)` with
/// `▷ = ⇀`. The result is always strong; the negation formula
/// `-a = a ⇀ a⁻¹` and the recovery of `∘` as the sub-adjacent product
/// are asserted.
pub fn to_post(b: &BraidedTable) -> PostTable {
    let n = b.order();
    let ct = b.circ_table();
    let add = FiniteSemigroup::from_fn(n, |x, y| ct.add(x, b.left(ct.neg(x), y)))
        .expect("values are in range by construction");
    let mut rhd = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            rhd.push(b.left(x, y));
        }
    }
    let p = check_post(&add, &rhd).expect("braided structures induce post tables");
    assert!(p.is_strong(), "the induced post table is strong");
    for a in 0..n {
        assert_eq!(p.add_table().neg(a), b.left(a, ct.neg(a)), "-a = a ⇀ a⁻¹");
    }
    assert!(
        sub_adjacent(&p).base().table_eq(ct.base()),
        "the sub-adjacent product recovers ∘"
    );
    p
}

/// For strong tables, `to_post(from_post(p)) = p` table-exact; the
/// strength gate reports the smallest violation.
pub fn post_braided_roundtrip(p: &PostTable) -> Result<(), RoundtripError> {
    if let Some(witness) = p.strong_failure() {
        return Err(RoundtripError::NotStrong { witness });
    }
    let back = to_post(&from_post(p));
    assert!(back.add_table().base().table_eq(p.add_table().base()));
    assert_eq!(back.rhd_flat(), p.rhd_flat());
    Ok(())
}

/// `from_post(to_post(b)) = b`, table-exact including both `σ` halves;
/// holds for every braided table.
pub fn braided_post_roundtrip(b: &BraidedTable) {
    let back = from_post(&to_post(b));
    assert!(back.circ_table().base().table_eq(b.circ_table().base()));
    assert_eq!(back.left_flat(), b.left_flat());
    assert_eq!(back.right_flat(), b.right_flat());
}

/// `σ` as a map of pairs; the braid relation is asserted.
pub fn sigma_as_ybe(b: &BraidedTable) -> YbeMap {
    let sigma = YbeMap::from_fn(b.order(), |x, y| (b.left(x, y), b.right(x, y)));
    sigma.assert_solution("braided");
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn flip_tables(n: usize) -> (Vec<usize>, Vec<usize>) {
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                left.push(b);
                right.push(a);
            }
        }
        (left, right)
    }

    #[test]
    fn flip_on_an_abelian_group_is_braided() {
        let z2 = catalog::find("z2").expect("entry").semigroup;
        let (left, right) = flip_tables(2);
        let b = check_braided(&z2, &left, &right).expect("abelian flip is braided");
        assert!(sigma_as_ybe(&b).table_eq(&YbeMap::flip(2)));

        let p = to_post(&b);
        assert!(p.add_table().base().table_eq(&z2));
        assert_eq!(p.rhd_flat(), &left[..]);
        assert!(p.is_strong());
        braided_post_roundtrip(&b);
    }

    #[test]
    fn commutative_idempotent_product_braids_itself() {
        // left = right = ∘ on the semilattice.
        let sl2 = catalog::find("sl2").expect("entry").semigroup;
        let meet: Vec<usize> = vec![0, 0, 0, 1];
        let b = check_braided(&sl2, &meet, &meet).expect("idempotent commutative example");
        assert!(sigma_as_ybe(&b).is_solution());

        // The induced post table has + = ∘ and ▷ = ∘.
        let p = to_post(&b);
        assert!(p.add_table().base().table_eq(&sl2));
        assert_eq!(p.rhd_flat(), &meet[..]);
        assert!(p.is_strong());
        braided_post_roundtrip(&b);
    }

    #[test]
    fn noncommutative_flip_fails_b7() {
        let s3 = catalog::find("s3").expect("entry").semigroup;
        let (left, right) = flip_tables(6);
        let err = check_braided(&s3, &left, &right).unwrap_err();
        assert_eq!(
            err,
            BraidedFailure::Axiom { axiom: BraidedAxiom::B7, witness: (1, 2).into() }
        );
        assert_eq!(err.code(), "B7");
        assert_eq!(err.to_string(), "B7 witness=(1,2)");
    }

    #[test]
    fn unary_axioms_are_checked_first() {
        let z2 = catalog::find("z2").expect("entry").semigroup;
        // ⇀ collapses everything: a⁰ ⇀ a = 0 misses a = 1.
        let err = check_braided(&z2, &[0, 0, 0, 0], &[0, 0, 1, 1]).unwrap_err();
        assert_eq!(err, BraidedFailure::Axiom { axiom: BraidedAxiom::B1, witness: 1.into() });

        // ↼ collapses everything: a ↼ a⁰ = 0 misses a = 1.
        let err = check_braided(&z2, &[0, 1, 0, 1], &[0, 0, 0, 0]).unwrap_err();
        assert_eq!(err, BraidedFailure::Axiom { axiom: BraidedAxiom::B4, witness: 1.into() });
    }

    #[test]
    fn shape_and_carrier_errors_come_before_axioms() {
        let z2 = catalog::find("z2").expect("entry").semigroup;
        assert_eq!(
            check_braided(&z2, &[0, 1], &[0, 0, 1, 1]).unwrap_err(),
            BraidedFailure::Shape(MapError::LengthMismatch { len: 2, expected: 4 })
        );
        assert_eq!(
            check_braided(&z2, &[0, 1, 0, 9], &[0, 0, 1, 1]).unwrap_err(),
            BraidedFailure::Shape(MapError::ValueOutOfRange { index: 3, value: 9, target: 2 })
        );
        let lz = catalog::find("left-zero-2").expect("entry").semigroup;
        let err = check_braided(&lz, &[0, 1, 0, 1], &[0, 0, 1, 1]).unwrap_err();
        assert_eq!(err.code(), "circ-idem-comm");
    }

    #[test]
    fn sign_twisted_post_round_trips_through_the_braided_side() {
        // On z4: even rows act as the identity, odd rows negate. The
        // sub-adjacent product is the Klein four-group.
        let z4 = catalog::clifford("z4").expect("entry");
        let rhd: Vec<usize> = (0..4)
            .flat_map(|a| (0..4).map(move |b| if a % 2 == 0 { b } else { (4 - b) % 4 }))
            .collect();
        let p = check_post(z4.base(), &rhd).expect("sign twist is a post operation");
        assert!(p.is_strong());

        let b = from_post(&p);
        assert_eq!(b.left_flat(), &rhd[..], "group zeros make ⇀ equal ▷");
        let klein = catalog::find("klein4").expect("entry").semigroup;
        assert!(
            crate::semigroup::are_isomorphic(b.circ_table().base(), &klein).is_some(),
            "the sub-adjacent product is Klein's four-group"
        );
        post_braided_roundtrip(&p).expect("strong tables round trip");
        braided_post_roundtrip(&b);
    }

    #[test]
    fn roundtrip_gate_names_the_strength_violation() {
        // The trivial operation on the semilattice is valid but not
        // strong, so the post → braided → post identity is refused.
        let sl2 = catalog::find("sl2").expect("entry").semigroup;
        let p = check_post(&sl2, &[0, 1, 0, 1]).expect("trivial operation");
        assert_eq!(
            post_braided_roundtrip(&p).unwrap_err(),
            RoundtripError::NotStrong { witness: (0, 1) }
        );
        // from_post itself still works on the non-strong table.
        let b = from_post(&p);
        assert!(sigma_as_ybe(&b).is_solution());
    }

    #[test]
    fn trivial_posts_braid_to_the_flip_exactly_when_the_group_is_abelian() {
        for (key, expect_flip) in [("z3", true), ("z4", true), ("s3", false)] {
            let ct = catalog::clifford(key).expect("entry");
            let n = ct.order();
            let rhd: Vec<usize> =
                (0..n).flat_map(|_| (0..n).collect::<Vec<_>>()).collect();
            let p = check_post(ct.base(), &rhd).expect("trivial operation on a group");
            let b = from_post(&p);
            // ⇀ is projection onto the second argument; ↼ is
            // conjugation, which collapses to the first argument only
            // when the product commutes.
            let sigma = sigma_as_ybe(&b);
            assert_eq!(sigma.table_eq(&YbeMap::flip(n)), expect_flip, "{key}");
        }
    }
}
