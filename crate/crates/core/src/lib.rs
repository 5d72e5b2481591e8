//! Exact computational machinery for the enumerative combinatorics of
//! simplicial complexes: f/h-vectors and their flag refinements, reduced
//! simplicial homology over exact fields, Stanley-Reisner face rings with
//! linear systems of parameters and g-element certificates, Macaulay
//! M-vector arithmetic, the weak order on symmetric and dihedral groups,
//! type-A buildings over GF(q), and convex ear decompositions.
//!
//! Everything is exact: rationals are arbitrary precision, finite fields are
//! prime fields, and every randomized search records its seed so runs can be
//! reproduced bit for bit.

pub mod building;
pub mod complex;
pub mod ears;
pub mod error;
pub mod face_ring;
pub mod flags;
pub mod generators;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod macaulay;
pub mod weak_order;

pub use error::{Error, Result};
