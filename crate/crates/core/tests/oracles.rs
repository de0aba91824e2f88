//! Brute-force oracles, written directly from the defining identities
//! on raw tables, cross-checked against the library's optimised
//! enumerators over the whole small-order catalog.

use cliffbraid::catalog;
use cliffbraid::post::enumerate_post;
use cliffbraid::rota_baxter::{enumerate_rb, EnumBudget, Weight};
use cliffbraid::FiniteSemigroup;

/// All length-`len` sequences over `{0, .., base-1}`.
struct Odometer {
    digits: Vec<usize>,
    base: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, base: usize) -> Self {
        Odometer { digits: vec![0; len], base, done: base == 0 }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Unique inverse in an inverse semigroup, found by scanning.
fn neg(sg: &FiniteSemigroup, a: usize) -> usize {
    let mut found = None;
    for x in 0..sg.order() {
        if sg.add(sg.add(a, x), a) == a && sg.add(sg.add(x, a), x) == x {
            assert!(found.is_none(), "inverses are unique");
            found = Some(x);
        }
    }
    found.expect("inverses exist")
}

fn zero(sg: &FiniteSemigroup, a: usize) -> usize {
    sg.add(a, neg(sg, a))
}

fn rb_holds(sg: &FiniteSemigroup, m: &[usize], weight: Weight) -> bool {
    let n = sg.order();
    for a in 0..n {
        for b in 0..n {
            let arg = match weight {
                Weight::Plus => {
                    sg.add(sg.add(sg.add(a, m[a]), b), neg(sg, m[a]))
                }
                Weight::Minus => {
                    sg.add(sg.add(sg.add(m[a], b), neg(sg, m[a])), a)
                }
            };
            if sg.add(m[a], m[b]) != m[arg] {
                return false;
            }
        }
    }
    (0..n).all(|a| sg.add(a, zero(sg, m[a])) == a)
}

fn rb_strong(sg: &FiniteSemigroup, m: &[usize]) -> bool {
    (0..sg.order()).all(|e| sg.add(e, e) != e || m[e] == e)
}

#[test]
fn rb_enumeration_matches_the_brute_force_oracle() {
    let budget = EnumBudget::default();
    for entry in catalog::entries() {
        if entry.negative || entry.semigroup.order() > 4 {
            continue;
        }
        let sg = &entry.semigroup;
        let n = sg.order();
        let ct = entry.clifford().expect("positive entries are Clifford");
        for weight in [Weight::Plus, Weight::Minus] {
            let oracle: Vec<Vec<usize>> =
                Odometer::new(n, n).filter(|m| rb_holds(sg, m, weight)).collect();
            let fast: Vec<Vec<usize>> = enumerate_rb(&ct, weight, false, &budget)
                .expect("catalog entries fit the default budget")
                .iter()
                .map(|op| op.map().as_slice().to_vec())
                .collect();
            assert_eq!(fast, oracle, "{} weight {weight:?}", entry.key);

            let strong_oracle: Vec<Vec<usize>> = oracle
                .iter()
                .filter(|m| rb_strong(sg, m))
                .cloned()
                .collect();
            let strong_fast: Vec<Vec<usize>> = enumerate_rb(&ct, weight, true, &budget)
                .expect("budget")
                .iter()
                .map(|op| op.map().as_slice().to_vec())
                .collect();
            assert_eq!(strong_fast, strong_oracle, "{} strong {weight:?}", entry.key);
        }
    }
}

#[test]
fn rb_counts_on_the_named_small_carriers() {
    let budget = EnumBudget::default();
    let count = |key: &str| {
        enumerate_rb(&catalog::clifford(key).expect("entry"), Weight::Plus, false, &budget)
            .expect("budget")
            .len()
    };
    assert_eq!(count("z2"), 2);
    assert_eq!(count("z3"), 3);
    let sl2 = enumerate_rb(
        &catalog::clifford("sl2").expect("entry"),
        Weight::Plus,
        false,
        &EnumBudget::default(),
    )
    .expect("budget");
    assert_eq!(sl2.len(), 2);
    assert_eq!(sl2.iter().filter(|op| op.is_strong()).count(), 1);
}

fn post_holds(sg: &FiniteSemigroup, rhd: &[usize]) -> bool {
    let n = sg.order();
    let r = |a: usize, b: usize| rhd[a * n + b];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // Additive translations.
                if r(a, sg.add(b, c)) != sg.add(r(a, b), r(a, c)) {
                    return false;
                }
                // Translations compose along a + (a ▷ b).
                if r(sg.add(a, r(a, b)), c) != r(a, r(b, c)) {
                    return false;
                }
            }
            // Idempotent parts exchange.
            let bz = zero(sg, b);
            if sg.add(a, r(a, bz)) != sg.add(bz, r(bz, a)) {
                return false;
            }
        }
    }
    // Each translation permutes each group component it fixes.
    for a in 0..n {
        let az = zero(sg, a);
        let members: Vec<usize> = (0..n).filter(|&x| zero(sg, x) == az).collect();
        let mut image: Vec<usize> = members.iter().map(|&x| r(a, x)).collect();
        image.sort_unstable();
        if image != members {
            return false;
        }
    }
    true
}

#[test]
fn post_enumeration_matches_the_brute_force_oracle() {
    let budget = EnumBudget::default();
    for key in ["z2", "sl2", "z3", "z2_0"] {
        let entry = catalog::find(key).expect("entry");
        let sg = &entry.semigroup;
        let n = sg.order();
        let ct = entry.clifford().expect("Clifford");
        let oracle: Vec<Vec<usize>> =
            Odometer::new(n * n, n).filter(|rhd| post_holds(sg, rhd)).collect();
        let fast: Vec<Vec<usize>> = enumerate_post(&ct, false, &budget)
            .expect("budget")
            .iter()
            .map(|p| p.rhd_flat().to_vec())
            .collect();
        assert_eq!(fast, oracle, "{key}");
    }
}

#[test]
fn classification_agrees_with_raw_scans_on_every_entry() {
    for entry in catalog::entries() {
        let sg = &entry.semigroup;
        let n = sg.order();
        let associative = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| sg.add(sg.add(a, b), c) == sg.add(a, sg.add(b, c)))
            })
        });
        let clifford = associative
            && (0..n).all(|a| {
                // A unique semigroup inverse whose idempotent parts
                // agree on both sides.
                let inverses: Vec<usize> = (0..n)
                    .filter(|&x| sg.add(sg.add(a, x), a) == a && sg.add(sg.add(x, a), x) == x)
                    .collect();
                inverses.len() == 1 && sg.add(a, inverses[0]) == sg.add(inverses[0], a)
            })
            && (0..n).all(|e| {
                sg.add(e, e) != e || (0..n).all(|f| {
                    sg.add(f, f) != f || sg.add(e, f) == sg.add(f, e)
                })
            });
        assert_eq!(sg.classify().is_clifford(), clifford, "{}", entry.key);
        assert_eq!(!entry.negative, clifford, "{}", entry.key);
    }
}
