//! Perturbative expansion of the cubic Gaussian model
//! `exp(-1/2 Q_ij x_i x_j + hbar C_ijk x_i x_j x_k)` by trivalent graphs,
//! with ribbon-graph topology and a Hermitian one-matrix model.
//!
//! Normalization: the Gaussian prefactor is divided out so the `hbar^0`
//! coefficient is 1. The coefficient of `hbar^m` is `<(C x x x)^m> / m!`,
//! which equals `1/m!` times the sum over all pairings of the `3m`
//! half-edges of the product of edge weights `Q^{ij}` and vertex weights
//! `C_ijk`. The matrix model uses the vertex `g tr M^3` with the same
//! bookkeeping.

mod forms;
mod matrix;
mod pairing;
mod ribbon;
mod scalar_model;
mod stein;

pub use forms::{CubicForm, QuadraticForm};
pub use matrix::{
    interpolate_oracle, matrix_model_at, matrix_model_series, ribbon_census, wick_oracle,
    RibbonCensusEntry,
};
pub use pairing::{
    canonical_adjacency, enumerate_pairings, graph_classes, pairing_count, Adjacency,
    GraphClass, Pairing,
};
pub use ribbon::{ribbon_faces, RibbonGraph, RibbonInvariants};
pub use scalar_model::{connected_scalar_series, pairing_weight, scalar_model_series};
pub use stein::stein_oracle_series;

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{FormalSeries, LaurentPolynomial, Ring};
use crate::scalar::Scalar;

/// Name of the expansion parameter in printed series.
pub const HBAR: &str = "hbar";

/// A truncated series in `hbar`. Scalar-model coefficients are constants;
/// matrix-model coefficients are polynomials in `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HbarSeries {
    series: FormalSeries,
}

impl HbarSeries {
    pub fn from_series(series: FormalSeries) -> Self {
        HbarSeries { series }
    }

    pub(crate) fn from_coefficients(ring: &Ring, coeffs: Vec<LaurentPolynomial>, order: usize) -> Self {
        HbarSeries {
            series: FormalSeries::new(HBAR, ring, coeffs, order).expect("coefficients share the ring"),
        }
    }

    pub fn series(&self) -> &FormalSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coefficient(&self, m: usize) -> &LaurentPolynomial {
        self.series.coeff(m)
    }

    /// The coefficient of `hbar^m` when it is a constant.
    pub fn scalar(&self, m: usize) -> Option<Scalar> {
        let c = self.series.coeff(m);
        c.is_constant().then(|| c.constant_term())
    }

    /// Sum over connected graphs, `log Z`.
    pub fn connected_log(&self) -> Result<HbarSeries> {
        if self.series.coeff(0) != &LaurentPolynomial::one(self.series.ring()) {
            return Err(Error::Domain(format!(
                "connected_log needs hbar^0 coefficient 1, found `{}`",
                self.series.coeff(0)
            )));
        }
        Ok(HbarSeries::from_series(self.series.log()?))
    }

    /// Inverse of [`HbarSeries::connected_log`].
    pub fn connected_exp(&self) -> Result<HbarSeries> {
        Ok(HbarSeries::from_series(self.series.exp()?))
    }

    /// The same coefficients printed in another symbol, e.g. `kappa`.
    pub fn renamed(&self, symbol: &str) -> FormalSeries {
        FormalSeries::new(
            symbol,
            self.series.ring(),
            self.series.coeffs().to_vec(),
            self.series.order(),
        )
        .expect("same ring")
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.series.fmt(f)
    }
}

/// `log z` for a series with `hbar^0` coefficient 1.
pub fn connected_log(z: &HbarSeries) -> Result<HbarSeries> {
    z.connected_log()
}

/// `exp f` for a series with zero constant term.
pub fn connected_exp(f: &HbarSeries) -> Result<HbarSeries> {
    f.connected_exp()
}

pub(crate) fn factorial(m: usize) -> Scalar {
    (1..=m as i64).map(Scalar::from_int).product()
}
