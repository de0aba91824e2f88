//! Finite Clifford semigroups and the operator zoo that lives on them.
//!
//! Everything here works on dense Cayley tables over the index set
//! `{0, .., n-1}`. The crate is organised in layers:
//!
//! * [`semigroup`] — raw tables, the classification ladder
//!   (associative → inverse → Clifford), homomorphism checks, products,
//!   and isomorphism search.
//! * [`clifford`] — validated Clifford tables with cached negation,
//!   idempotent parts, group components, the semilattice decomposition,
//!   normal subsemigroups and quotients.
//! * [`rota_baxter`] — Rota–Baxter operators of weight `±1`: axiom
//!   checking, exhaustive enumeration, a library of constructions, the
//!   weight correspondence, the kernel/image structure suite, and the
//!   induced second operation.
//! * [`brace`] — dual weak left braces, their lambda maps, ideals,
//!   quotients, and the Yang–Baxter solution they induce.
//! * [`post`] — post Clifford semigroups and their equivalence with
//!   braces.
//! * [`relative`] — relative Rota–Baxter systems on a semigroup action:
//!   axioms, the semidirect-product graph test, ideals, quotients, and
//!   the correspondence with post structures.
//! * [`braided`] — braided Clifford semigroups and their equivalence
//!   with post structures.
//! * [`ybe`] — set-theoretic Yang–Baxter maps and the braid-relation
//!   checker shared by all construction routes.
//! * [`catalog`] — the built-in library of small test structures.
//! * [`io`] — the JSON wire formats used by the CLI.
//!
//! Validators return structured failures carrying a short axiom code and
//! the smallest offending element tuple; identities that are theorems of
//! an already-validated structure are enforced with internal assertions
//! instead, so a panic always means a bug rather than bad input.

pub mod braided;
pub mod brace;
pub mod catalog;
pub mod clifford;
pub mod io;
pub mod post;
pub mod relative;
pub mod rota_baxter;
pub mod semigroup;
pub mod ybe;

mod witness;

pub use clifford::{CliffordTable, NormalSubsemigroup, Quotient, SubClifford};
pub use semigroup::{Classification, ElementMap, FiniteSemigroup};
pub use witness::Witness;
