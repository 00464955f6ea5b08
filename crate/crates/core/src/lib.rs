//! Exact evaluation of the group-scheme functors attached to a grading on a
//! finite-dimensional (not necessarily associative) algebra.
//!
//! The crate evaluates `Aut(A)`, `Stab(Γ)`, `Diag(Γ)` and `Aut(Γ)` at concrete
//! finite-dimensional commutative test rings, runs the generic centralizer and
//! normalizer tests over the group algebra `RG`, and computes Weyl groups of
//! gradings both over the base field and over its algebraic closure.
//!
//! Module map:
//!
//! - [`scalars`]: exact fields (ℚ, 𝔽_q, simple extensions) and polynomials.
//! - [`abgroups`]: finitely generated abelian groups, Smith normal form,
//!   subgroups and characters.
//! - [`comrings`]: commutative test rings by structure constants, idempotent
//!   decomposition, unit groups, sparse group-algebra arithmetic.
//! - [`galg`]: algebras, gradings, the universal group, scalar extension.
//! - [`points`]: functor-of-points membership tests and enumeration.
//! - [`weyl`]: admissible permutations, the thin solver, Weyl groups.
//! - [`cli`]: the deck format and the command runner behind the `gradscheme` binary.

pub mod abgroups;
pub mod cli;
pub mod comrings;
mod error;
pub mod fixtures;
pub mod galg;
pub mod linalg;
pub mod points;
pub mod scalars;
pub mod weyl;

pub use error::{Error, Result};
