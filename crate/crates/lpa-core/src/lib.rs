//! Exact symbolic computation in Leavitt path algebras of finite directed
//! graphs over the rational field.
//!
//! The crate is organised around the objects the theory manipulates:
//!
//! * [`graph`] — finite directed graphs, the `vertex`/`edge` DSL, and the
//!   structural predicates (trees, hereditary-saturated closures, cycles,
//!   exits, downward directedness, comets, simplicity).
//! * [`algebra`] — walks `αβ*`, exact ℚ-linear elements kept in normal form
//!   relative to a fixed monomial basis, multiplication, involution,
//!   grading and the `∂` length measure.
//! * [`centroid`] — centralizers represented by their vertex seeds:
//!   validation, evaluation, exact solution spaces, corner-center
//!   decomposition, the `S(x) = c*xc` collapse analysis and the
//!   constructive comet centralizer.
//! * [`laurent`] — Laurent polynomials and square matrices over them,
//!   nice corner embeddings, centroid transfer maps, inverse-limit
//!   stabilization and the comet-to-matrix isomorphism.
//! * [`mod@classify`] — the decision tree with machine-checkable certificates.
//!
//! Everything is `no_std` + `alloc`; all arithmetic is exact (arbitrary
//! precision rationals), all orderings are deterministic, and every value is
//! immutable once built, so the whole API is safe to share across threads.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod centroid;
pub mod classify;
pub mod graph;
pub mod laurent;
pub mod linalg;
pub mod rng;
pub mod sample;

pub use algebra::{Element, LeavittAlgebra, Walk};
pub use centroid::{CentralizerSeed, SeedSpace};
pub use classify::{classify, Branch, Classification, Verdict};
pub use graph::{Cycle, EdgeId, Graph, Path, VertexId};
pub use laurent::{LaurentMatrix, LaurentPoly};

/// Exact scalar type used throughout: arbitrary-precision rationals.
pub type Coeff = num_rational::BigRational;

/// Convenience constructor for small rational constants.
pub fn q(n: i64, d: i64) -> Coeff {
    Coeff::new(n.into(), d.into())
}

/// Convenience constructor for integer constants.
pub fn qi(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}
