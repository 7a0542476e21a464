//! Exact-arithmetic toolkit for lattice polytopes.
//!
//! Integral polytopes are stored by their vertices; facets, projections and
//! lattice point counts are derived exactly. On top of that the crate
//! provides δ-vectors (h*-vectors) and Ehrhart polynomials, polar duals and
//! reflexivity, the prism / bipyramid / Γ / pyramid constructions with
//! their closed-form δ transforms, the Sylvester family of self-dual
//! reflexive simplices, a unimodular equivalence decision procedure and a
//! reader for Kreuzer–Skarke style vertex matrices.
//!
//! The integer linear algebra ([`lattice`], [`normal_form`]) is generic over
//! [`Int`]; everything geometric is instantiated at [`BigInt`] through the
//! aliases below.

pub mod constructions;
pub mod ehrhart;
pub mod equivalence;
mod error;
pub mod ks_io;
pub mod lattice;
pub mod normal_form;
pub mod polytope;
pub mod scalar;

pub use num_bigint::BigInt;

pub use error::{Error, Result};
pub use scalar::Int;

/// Integer point of `ℤ^d`.
pub type LatticePoint = lattice::Point<BigInt>;
/// Arbitrary-precision integer matrix.
pub type IntMatrix = lattice::Matrix<BigInt>;
/// Reduced arbitrary-precision fraction.
pub type Rational = num_rational::Ratio<BigInt>;

pub use constructions::{
    bipyramid, fixture, fixtures, gamma, gamma_delta_formula, prism01, prism_delta_formula,
    prism_sym, pyramid, sylvester, sylvester_simplex, sylvester_simplex_dual_map,
};
pub use ehrhart::{count_points, delta_vector, delta_vector_simplex, DeltaVector};
pub use equivalence::{apply_map, are_equivalent, fingerprint, UnimodularMap};
pub use polytope::{make_polytope, HalfSpace, Polytope};
