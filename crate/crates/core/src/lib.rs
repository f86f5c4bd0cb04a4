//! Exact computation with F_q-linear sets in PG(d, q^n).
//!
//! A linear set is the set of points spanned by the nonzero vectors of an
//! F_q-subspace `U` of F_{q^n}^{d+1}. This crate builds such subspaces,
//! enumerates their points and weights, checks lower bounds on their size and
//! reproduces the standard families that meet those bounds. Everything is
//! exact integer or finite-field arithmetic; a separate brute-force path in
//! [`oracle`] recomputes every report independently.

pub mod arith;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod linset;
pub mod oracle;
pub mod polynomials;
pub mod projgeo;

pub use error::{Error, Result};
