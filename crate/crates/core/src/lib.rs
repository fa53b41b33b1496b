//! Arithmetic, lattice and enumeration tools for Dehn surgery on knots in S³.
//!
//! - [`slopes`]: exact slopes, degeneracy loci, negative continued fractions and
//!   lens-space equivalence.
//! - [`lattices`]: changemaker vectors, orthogonal complements, linear plumbing
//!   lattices, short-vector enumeration and lattice isomorphism.
//! - [`invariants`]: Alexander polynomials, torsion coefficients and genus.
//! - [`surgery`]: surgeries on torus knots, exceptional-surgery gates for fibered
//!   knots and characterizing-slope bounds.
//! - [`realize`]: exhaustive changemaker search for lens-space surgeries.

pub mod error;
pub mod invariants;
pub mod lattices;
pub mod realize;
pub mod slopes;
pub mod surgery;

pub use error::{Error, Result};
