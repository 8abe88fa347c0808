//! Exact-arithmetic library for cone lifts of polytopes and cone
//! factorizations of their slack matrices.
//!
//! Everything here is computed over arbitrary-precision rationals: slack
//! matrices, nonnegative and psd factorizations, affine cone lifts and the
//! projection/extraction maps between them, plus the standard lower and
//! upper bounds on nonnegative, psd and Boolean rank.

pub mod bounds;
pub mod combin;
pub mod copositive;
pub mod dd;
pub mod error;
pub mod facelattice;
pub mod factorize;
pub mod gallery;
pub mod heuristics;
pub mod lift;
pub mod linalg;
pub mod matrix;
pub mod pattern;
pub mod polytope;
pub mod psd;
pub mod rational;

pub use error::Error;
pub use matrix::{RationalMatrix, SymmetricMatrix};
pub use rational::Rational;

/// Convenience alias used throughout: a dense rational vector.
pub type RationalVector = Vec<Rational>;
