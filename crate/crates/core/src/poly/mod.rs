//! Exact Laurent polynomials over the Gaussian rationals and truncated
//! formal power series with polynomial coefficients.

mod laurent;
mod parse;
mod series;

use std::collections::HashMap;

pub use laurent::{canonical_cmp, ExponentVector, LaurentPolynomial, Ring};
pub use series::FormalSeries;

use crate::error::Result;
use crate::scalar::Scalar;

pub(crate) use laurent::is_identifier;

/// Product of two polynomials over the same ring.
pub fn lp_mul(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    a.checked_mul(b)
}

/// Exact evaluation at a point of the torus.
pub fn lp_eval(f: &LaurentPolynomial, point: &HashMap<String, Scalar>) -> Result<Scalar> {
    f.eval(point)
}

/// `var^k m ↦ k var^k m`, i.e. d/dx where `var = e^x`.
pub fn lp_x_log_derivative(f: &LaurentPolynomial, var: &str) -> Result<LaurentPolynomial> {
    f.x_log_derivative(var)
}

pub fn ps_log(s: &FormalSeries) -> Result<FormalSeries> {
    s.log()
}

pub fn ps_exp(s: &FormalSeries) -> Result<FormalSeries> {
    s.exp()
}
