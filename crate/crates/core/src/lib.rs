//! The L function of two Saalschützian `4F3(1)` series and its invariance group.
//!
//! `L(a,b,c,d;e;f,g)` is defined on the hyperplane `e+f+g-a-b-c-d = 1` as a
//! linear combination of two Saalschützian `4F3(1)` series. This crate gives
//! three independent ways to evaluate it (series, very-well-poised `7F6`,
//! Barnes integral), builds the 1920-element matrix group `W(D5)` that leaves it
//! invariant, classifies the induced relations by double cosets of the
//! permutation subgroup, and checks the classical identities that follow.
//!
//! Module map:
//! - [`gamma`]: complex log-gamma, reciprocal gamma, `sin(pi z)`, Pochhammer symbols
//! - [`series`]: `p+1Fp` classification, direct/extrapolated/exact-rational summation
//! - [`lfunc`]: parameter points on the hyperplane and the three evaluators
//! - [`barnes`]: vertical-contour Barnes integrals and Barnes' lemmas
//! - [`group`]: exact integer matrices, group enumeration, cosets
//! - [`catalog`]: affine parameter forms for all 1920 relations
//! - [`verify`]: randomized verification of invariances and classical identities

pub mod affine;
pub mod barnes;
pub mod catalog;
mod complex_serde;
pub mod error;
pub mod gamma;
pub mod group;
pub mod lfunc;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type ComplexValue = num::complex::Complex64;

/// Exact rational scalar used by the terminating-series code.
pub type RationalValue = num::BigRational;
