//! Exact computer algebra for a finite-dimensional model of the rational
//! Grothendieck ring of an abelian variety.
//!
//! A [`ModelAlgebra`] carries a bigraded basis `K^p_q`, the usual product and
//! a Fourier-Mukai matrix. Everything else (Pontryagin product, Adams
//! operations, λ/γ operations, filtrations) is derived exactly from those.

pub mod check;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod filtration;
pub mod io;
pub mod lambda;
pub mod model;
pub mod operators;
pub mod par;
pub mod series;
pub mod suite;

pub use check::{Check, Outcome};
pub use error::{Error, Result};
pub use exact::{Matrix, Rational, Subspace};
pub use model::{Bidegree, Element, ModelAlgebra, ProductKind};
