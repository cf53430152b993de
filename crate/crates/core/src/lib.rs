//! Exact computation of knot concordance invariants from bifiltered chain
//! complexes over GF(2).
//!
//! The central object is [`Complex`]: a finitely generated free bifiltered
//! chain complex over GF(2) with invertible formal variable `U`. On top of
//! it the crate computes the concordance invariants tau, Upsilon (pointwise
//! and as an exact piecewise-linear function), the `V_k` family and `nu+`,
//! builds the model complexes (torus-knot staircases, acyclic boxes, the
//! `(n,1)`-cable model), handles Alexander polynomials of satellites, and
//! assembles jump-matrix certificates for summand arguments.

pub mod alexander;
pub mod certificate;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod io;
pub mod laurent;
pub mod models;

pub use complex::{Complex, Generator, HomologyDims, Monomial, ValidationReport};
pub use error::{Error, Result};
pub use invariants::{PlFunction, UpsilonMode};
pub use laurent::LaurentPoly;

/// Exact rational scalar used throughout the invariant computations.
pub type Rational = num_rational::BigRational;
