//! Exact and tiered-precision computation of effective bounds for families
//! of canonically polarized manifolds over curves.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure
//! computation on value types; file formats, the CLI and parallel sweeps
//! live in the `shafbound` companion crate.
//!
//! Module map:
//!
//! - [`ratpoly`]: exact univariate polynomials over the rationals.
//! - [`gotzmann`]: binomial-sum decompositions, the recursive length table
//!   and the closed-form length bound.
//! - [`hilbert`]: Hilbert polynomials of canonically polarized manifolds,
//!   their coefficient bounds, and the hyperplane-section transfer matrix.
//! - [`magnitude`]: exact / log10 / log10-log10 tiered numbers.
//! - [`bounds`]: the constant pipeline m0, δ, d(k,a), N, d, M and the
//!   final counts C(g,s,h), C(g,s,n,v).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod bigfloat;
pub mod bounds;
pub mod gotzmann;
pub mod hilbert;
pub mod magnitude;
pub mod matrix;
pub mod ratpoly;

pub use error::{Error, Result};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use bounds::{BoundReport, FamilyParams, Mode};
pub use ratpoly::RatPoly;
pub use magnitude::{Magnitude, Policy};
pub use gotzmann::{GotzmannDecomposition, LengthTable};
pub use hilbert::{CanonicalPolarization, TransferMatrix};
