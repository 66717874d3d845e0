//! Exact computational machinery around torus braid groups and torus
//! configuration spaces.
//!
//! The crate has three layers:
//!
//! * generic finitely presented group tooling — freely reduced words,
//!   integer Smith normal forms, abelian invariants, permutation
//!   representations ([`word`], [`matrix`], [`presentation`], [`perm`]);
//! * the torus braid groups themselves — Zariski's presentation of
//!   `B_n(T²)`, Artin's `B_n`, the symmetric-group epimorphism `μ`, and
//!   Reidemeister–Schreier rewriting of the pure subgroup `P_n(T²)`
//!   ([`braid`], [`coset`]);
//! * exact arithmetic on tori with complex multiplication and the flag
//!   complex of differences `e_{m;i,j}(q) = m(q_i − q_j)`, together with
//!   its symmetric-group orbit theory and tame-map descriptor recovery
//!   ([`lattice`], [`torus`], [`complex`], [`tame`], [`audit`]).
//!
//! Everything is integer or rational arithmetic; there is no floating
//! point anywhere, and all enumeration orders are deterministic.

pub mod audit;
pub mod braid;
pub mod complex;
pub mod coset;
pub mod lattice;
pub mod matrix;
pub mod perm;
pub mod presentation;
pub mod tame;
pub mod torus;
pub mod word;

pub use braid::BraidFamily;
pub use complex::{Difference, FormalCombination, GraphKind, Simplex};
pub use lattice::{LatticeClass, Marker, RingElement};
pub use matrix::{AbelianInvariants, IntegerMatrix};
pub use perm::{PermHomomorphism, Permutation};
pub use presentation::Presentation;
pub use torus::{Configuration, TorusAutomorphism, TorusPoint};
pub use word::{Letter, Word};
