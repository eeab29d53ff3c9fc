//! Exact rational linear algebra: scalars, dense matrices, and subspaces.

mod matrix;
pub mod rational;
mod subspace;

pub use matrix::{vandermonde_det, vandermonde_matrix, Matrix};
pub use rational::Rational;
pub use subspace::Subspace;
