//! Built-in library of small test structures.
//!
//! Every test suite and the CLI draw their fixtures from here, in a
//! fixed, deterministic order. Positive entries are Clifford tables of
//! order at most 8; the two negative entries exercise the failure paths
//! of the classification ladder. On top of the plain semigroups the
//! catalog also ships a set of validated semigroup actions (`T`, `S`,
//! `φ`) used by the relative Rota–Baxter test suites.

use crate::clifford::CliffordTable;
use crate::relative::Action;
use crate::semigroup::{ElementMap, FiniteSemigroup};

/// One catalog semigroup. `negative` marks fixtures that intentionally
/// fail classification (and therefore have no Clifford table).
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub negative: bool,
    pub semigroup: FiniteSemigroup,
}

impl CatalogEntry {
    /// The validated Clifford table; `None` for negative fixtures.
    pub fn clifford(&self) -> Option<CliffordTable> {
        if self.negative {
            None
        } else {
            Some(self.semigroup.expect_clifford().expect("positive entries are Clifford"))
        }
    }
}

fn cyclic(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, |a, b| (a + b) % n).expect("valid table")
}

/// Adjoins an absorbing zero at index 0; group element `i` of the input
/// becomes index `i + 1`.
fn adjoin_zero(g: &FiniteSemigroup) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(g.order() + 1, |a, b| {
        if a == 0 || b == 0 {
            0
        } else {
            g.add(a - 1, b - 1) + 1
        }
    })
    .expect("valid table")
}

fn two_element_semilattice() -> FiniteSemigroup {
    // Index 0 absorbs; this is the meet table of the chain 0 < 1.
    FiniteSemigroup::from_rows(&[vec![0, 0], vec![0, 1]]).expect("valid table")
}

fn symmetric_group_3() -> FiniteSemigroup {
    // Permutations of {0,1,2} in lexicographic one-line order;
    // product a+b applies b first, then a.
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index_of = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("a permutation");
    let sg = FiniteSemigroup::from_fn(6, |a, b| {
        let (pa, pb) = (perms[a], perms[b]);
        index_of([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
    })
    .expect("valid table");
    let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
    sg.with_labels(labels).expect("one label per element")
}

/// Two copies of Z2 glued along a 2-chain of idempotents: indices 0,1
/// form the upper copy, 2,3 the lower one, and the structure map is the
/// evident isomorphism sending the upper copy onto the lower one.
fn z2_over_z2() -> FiniteSemigroup {
    FiniteSemigroup::from_rows(&[
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 2, 3],
        vec![3, 2, 3, 2],
    ])
    .expect("valid table")
    .with_labels(vec!["e".into(), "a".into(), "f".into(), "b".into()])
    .expect("one label per element")
}

/// All catalog semigroups in their fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    let with_zero_labels = |sg: FiniteSemigroup| {
        let labels = std::iter::once("z".to_string())
            .chain((0..sg.order() - 1).map(|i| i.to_string()))
            .collect();
        sg.with_labels(labels).expect("one label per element")
    };
    let mut list = Vec::new();
    for n in 2..=8 {
        list.push(CatalogEntry {
            key: ["z2", "z3", "z4", "z5", "z6", "z7", "z8"][n - 2],
            description: "cyclic group of that order",
            negative: false,
            semigroup: cyclic(n),
        });
    }
    list.push(CatalogEntry {
        key: "klein4",
        description: "Klein four-group Z2 x Z2",
        negative: false,
        semigroup: cyclic(2).direct_product(&cyclic(2)),
    });
    list.push(CatalogEntry {
        key: "s3",
        description: "symmetric group on three points (noncommutative)",
        negative: false,
        semigroup: symmetric_group_3(),
    });
    list.push(CatalogEntry {
        key: "sl2",
        description: "two-element semilattice, index 0 absorbing",
        negative: false,
        semigroup: two_element_semilattice(),
    });
    list.push(CatalogEntry {
        key: "chain3",
        description: "three-element chain semilattice (min)",
        negative: false,
        semigroup: FiniteSemigroup::from_fn(3, |a, b| a.min(b)).expect("valid table"),
    });
    list.push(CatalogEntry {
        key: "diamond22",
        description: "2x2 diamond semilattice (product of two chains)",
        negative: false,
        semigroup: two_element_semilattice().direct_product(&two_element_semilattice()),
    });
    list.push(CatalogEntry {
        key: "z2_0",
        description: "Z2 with an absorbing zero adjoined",
        negative: false,
        semigroup: with_zero_labels(adjoin_zero(&cyclic(2))),
    });
    list.push(CatalogEntry {
        key: "z3_0",
        description: "Z3 with an absorbing zero adjoined",
        negative: false,
        semigroup: with_zero_labels(adjoin_zero(&cyclic(3))),
    });
    list.push(CatalogEntry {
        key: "z2_over_z2",
        description: "two Z2 layers over a 2-chain, isomorphic structure map",
        negative: false,
        semigroup: z2_over_z2(),
    });
    list.push(CatalogEntry {
        key: "left-zero-2",
        description: "left-zero semigroup; associative but not inverse",
        negative: true,
        semigroup: FiniteSemigroup::from_rows(&[vec![0, 0], vec![1, 1]]).expect("valid table"),
    });
    list.push(CatalogEntry {
        key: "non-associative-3",
        description: "subtraction mod 3; fails associativity",
        negative: true,
        semigroup: FiniteSemigroup::from_fn(3, |a, b| (3 + a - b) % 3).expect("valid table"),
    });
    list
}

/// Looks up a single entry by key.
pub fn find(key: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.key == key)
}

/// Convenience: the validated Clifford table of a positive entry.
pub fn clifford(key: &str) -> Option<CliffordTable> {
    find(key).and_then(|e| e.clifford())
}

/// A validated semigroup action fixture for the relative test suites:
/// `S` acts on `T` through the endomorphism family `φ`.
#[derive(Debug, Clone)]
pub struct ActionFixture {
    pub key: &'static str,
    pub action: Action,
}

/// All action fixtures in their fixed order.
pub fn action_fixtures() -> Vec<ActionFixture> {
    let mut list = Vec::new();

    let trivial = |t: &CliffordTable, s: &CliffordTable| {
        let maps = vec![ElementMap::identity(t.order()); s.order()];
        Action::new(t.clone(), s.clone(), maps).expect("identity maps always act")
    };

    let z2 = clifford("z2").expect("catalog entry");
    let z3 = clifford("z3").expect("catalog entry");
    let z4 = clifford("z4").expect("catalog entry");
    let sl2 = clifford("sl2").expect("catalog entry");
    let s3 = clifford("s3").expect("catalog entry");

    list.push(ActionFixture { key: "z2-on-z2-trivial", action: trivial(&z2, &z2) });
    list.push(ActionFixture { key: "z3-on-z3-trivial", action: trivial(&z3, &z3) });

    // Z2 acts on Z3 by negation.
    let negation3 = ElementMap::endo(3, vec![0, 2, 1]).expect("valid map");
    list.push(ActionFixture {
        key: "z2-on-z3-negation",
        action: Action::new(z3.clone(), z2.clone(), vec![ElementMap::identity(3), negation3])
            .expect("negation is an involutive automorphism"),
    });

    // Z2 acts on Z4 by negation.
    let negation4 = ElementMap::endo(4, vec![0, 3, 2, 1]).expect("valid map");
    list.push(ActionFixture {
        key: "z2-on-z4-negation",
        action: Action::new(z4.clone(), z2.clone(), vec![ElementMap::identity(4), negation4])
            .expect("negation is an involutive automorphism"),
    });

    // The semilattice acts on Z2: the absorbing index collapses
    // everything to zero, the top index acts as the identity.
    let const0 = ElementMap::endo(2, vec![0, 0]).expect("valid map");
    list.push(ActionFixture {
        key: "sl2-on-z2-collapse",
        action: Action::new(z2.clone(), sl2.clone(), vec![const0, ElementMap::identity(2)])
            .expect("collapse/identity family is an action"),
    });

    // Same shape with the semilattice acting on itself.
    let const0_sl = ElementMap::endo(2, vec![0, 0]).expect("valid map");
    list.push(ActionFixture {
        key: "sl2-on-sl2-collapse",
        action: Action::new(sl2.clone(), sl2.clone(), vec![const0_sl, ElementMap::identity(2)])
            .expect("collapse/identity family is an action"),
    });

    // The noncommutative entry acting on itself by conjugation.
    let conj_maps = (0..s3.order())
        .map(|g| {
            let images =
                (0..s3.order()).map(|x| s3.add(s3.add(g, x), s3.neg(g))).collect::<Vec<_>>();
            ElementMap::endo(s3.order(), images).expect("valid map")
        })
        .collect();
    list.push(ActionFixture {
        key: "s3-on-s3-conjugation",
        action: Action::new(s3.clone(), s3.clone(), conj_maps)
            .expect("conjugation family is an action"),
    });

    list
}

/// Looks up a single action fixture by key.
pub fn find_action(key: &str) -> Option<ActionFixture> {
    action_fixtures().into_iter().find(|f| f.key == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Classification;

    #[test]
    fn entries_are_deterministic_and_validated() {
        let all = entries();
        let keys: Vec<&str> = all.iter().map(|e| e.key).collect();
        assert_eq!(
            keys,
            vec![
                "z2", "z3", "z4", "z5", "z6", "z7", "z8", "klein4", "s3", "sl2", "chain3",
                "diamond22", "z2_0", "z3_0", "z2_over_z2", "left-zero-2", "non-associative-3",
            ]
        );
        for e in &all {
            assert!(e.semigroup.order() <= 8, "{} too large", e.key);
            if e.negative {
                assert!(!e.semigroup.classify().is_clifford(), "{} must stay negative", e.key);
            } else {
                assert!(e.clifford().is_some(), "{} must be Clifford", e.key);
            }
        }
    }

    #[test]
    fn exactly_one_noncommutative_entry() {
        let noncomm: Vec<&str> = entries()
            .iter()
            .filter(|e| !e.negative && !e.semigroup.is_commutative())
            .map(|e| e.key)
            .collect();
        assert_eq!(noncomm, vec!["s3"]);
    }

    #[test]
    fn negative_fixture_witnesses() {
        match find("left-zero-2").unwrap().semigroup.classify() {
            Classification::Semigroup { .. } => {}
            other => panic!("expected Semigroup, got {}", other.class_name()),
        }
        match find("non-associative-3").unwrap().semigroup.classify() {
            Classification::NotAssociative { witness } => assert_eq!(witness, (0, 0, 1)),
            other => panic!("expected NotAssociative, got {}", other.class_name()),
        }
    }

    #[test]
    fn structured_entries_decompose_as_expected() {
        // Z2 with a zero: a 2-chain of idempotents, groups Z2 and trivial,
        // with the collapsing structure map.
        let ct = clifford("z2_0").unwrap();
        let d = ct.decompose();
        assert_eq!(d.idempotents, vec![0, 1]);
        assert_eq!(d.groups, vec![vec![0], vec![1, 2]]);
        assert_eq!(d.structure_map(1, 0).unwrap(), &[0, 0]);

        // Two Z2 layers: both components have order 2, idempotent 2 lies
        // below idempotent 0, and the downward structure map is the
        // bijection 0 ↦ 2, 1 ↦ 3.
        let ct = clifford("z2_over_z2").unwrap();
        let d = ct.decompose();
        assert_eq!(d.groups, vec![vec![0, 1], vec![2, 3]]);
        assert!(d.leq(1, 0));
        assert_eq!(d.structure_map(0, 1).unwrap(), &[2, 3]);
        assert_eq!(d.structure_map(1, 0), None);
    }

    #[test]
    fn action_fixtures_build() {
        let fixtures = action_fixtures();
        let keys: Vec<&str> = fixtures.iter().map(|f| f.key).collect();
        assert_eq!(
            keys,
            vec![
                "z2-on-z2-trivial",
                "z3-on-z3-trivial",
                "z2-on-z3-negation",
                "z2-on-z4-negation",
                "sl2-on-z2-collapse",
                "sl2-on-sl2-collapse",
                "s3-on-s3-conjugation",
            ]
        );
    }
}
