//! Exact computer algebra for knot contact homology and its companions:
//! Laurent polynomials and series, Legendrian DGAs and their augmentation
//! varieties, perturbative fat-graph expansions, HOMFLY skein evaluation,
//! and mirror branch series with their disk potentials.

pub mod augment;
pub mod dga;
pub mod error;
pub mod feynman;
pub mod groebner;
pub mod homfly;
pub mod mirror;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use poly::{FormalSeries, LaurentPolynomial, Ring};
pub use scalar::Scalar;
