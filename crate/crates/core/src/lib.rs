//! Exact-arithmetic toolkit for tropical mutation surfaces built from the
//! rank-two shearing polyptych lattice with a single mutation.
//!
//! The library takes three pieces of input data:
//!
//! * a shear parameter `s >= 1`,
//! * a degree-`s` rational polynomial `f` (by roots or by coefficients),
//! * a polytope cut out by tropical points `(a, b, c)` at negative levels,
//!
//! and computes the invariants of the associated projective surface:
//! chart polygons, PL vertices, sink/source data, class group, Cox
//! presentation, complexity, toricity, singularity types, toric
//! degenerations, the dual combinatorial mutation, and the global family
//! over the projective line.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point and no tolerance anywhere.

pub mod corpus;
pub mod degeneration;
pub mod detrop;
pub mod error;
pub mod lattice;
pub mod polyptych;
pub mod surface;

/// Arbitrary-precision integer used for all lattice data.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used for all non-integral quantities.
pub type Rat = num_rational::BigRational;

/// Shorthand constructor for [`Int`].
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand constructor for [`Rat`]; panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub use error::Error;
