//! Exact arithmetic statistics of integer matrices.
//!
//! The library counts matrices in the box `M_n(Z; H)` (entries bounded by
//! `H` in absolute value) by characteristic polynomial, determinant and
//! trace data, decides bounded multiplicative dependence of matrix tuples,
//! builds explicit dependent families, and provides the lattice and number
//! theory routines these rest on.
//!
//! Algorithms are generic over the scalar traits in [`scalar`]; the aliases
//! below fix the arbitrary-precision instantiations.

pub mod counting;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod multdep;
pub mod numtheory;
mod par;
pub mod scalar;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Square matrix of arbitrary-precision integers.
pub type IntMatrix = linalg::Matrix<BigInt>;
/// Square matrix of exact rationals.
pub type RationalMatrix = linalg::Matrix<scalar::BigRational>;
/// Monic polynomial with arbitrary-precision integer coefficients.
pub type MonicIntPoly = linalg::MonicPoly<BigInt>;
/// Integer vector with arbitrary-precision coordinates.
pub type IntVector = lattice::Vector<BigInt>;
/// Integer lattice with arbitrary-precision basis vectors.
pub type IntLattice = lattice::Lattice<BigInt>;
