//! Exact computer algebra for relative invariants of ring extensions.
//!
//! The library works over computable commutative rings (ℤ/n, prime fields, ℚ,
//! and finite-rank algebras given by structure constants) and computes, with
//! tolerance-zero arithmetic:
//!
//! * truncated big Witt vectors with Frobenius, Verschiebung, ghost
//!   components and the characteristic-series embedding of endomorphisms,
//! * relative Picard groups `Pic(f) = B^x / A^x` of extensions `f: A ↪ B`,
//!   their nil-parts `NPic(f)` and the Witt-module action on them,
//! * relative `K_0` via matrix triples, determinants and lambda operations,
//! * augmented Cech complexes of nil-unit functors over covers of `Spec A`
//!   by basic opens, together with an exactness checker,
//! * negative relative K-groups of extensions of local artinian rings.
//!
//! The `verify` module bundles the statement-by-statement checkers used by
//! the `cartier` command-line tool.

pub mod abelian;
pub mod catalog;
pub mod cech;
mod error;
pub mod input;
pub mod matrix;
pub mod negk;
pub mod par;
pub(crate) mod poly;
pub mod relk0;
pub mod relpic;
pub mod ring;
pub mod scalar;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
