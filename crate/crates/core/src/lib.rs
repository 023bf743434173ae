//! Cohomology, twists and Brauer groups of the groupoid `Γ(X, σ)` built from
//! a local homeomorphism `σ : X -> X`.
//!
//! The groupoid consists of triples `(x, m, y)` such that `σ^k(x) = σ^l(y)`
//! for some `k, l >= 0` with `k - l = m`. Its integral cohomology sits in a
//! long exact sequence with `1 - σ*` acting on `H^n(X)`, which is what the
//! engines in this crate evaluate for several model classes:
//!
//! * [`torus`]: covering maps of `T^k` given by an integer matrix,
//! * [`solenoid`]: the `(p, q)` solenoid with rank-one localized coefficients,
//! * [`simplicial`]: finite simplicial complexes with simplicial self-maps,
//! * [`tower`]: disjoint unions along a tower of maps (inverse limits and `lim¹`),
//! * [`groupoid`]: finite discrete systems, where the groupoid itself is
//!   enumerated and its cocycle, twist and correspondence identities checked.
//!
//! Everything is exact: integers are arbitrary precision and scalars in the
//! correspondence checks are Gaussian rationals.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod cochain;
pub mod error;
pub mod groupoid;
pub mod simplicial;
pub mod solenoid;
pub mod torus;
pub mod tower;

pub use error::{Error, Result};
