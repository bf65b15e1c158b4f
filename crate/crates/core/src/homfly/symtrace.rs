//! Traces in symmetric powers of a holonomy with a given spectrum.
//!
//! `sum_k tr_{S^k}(U) t^k = det(1 - t U)^-1 = prod_i (1 - lambda_i t)^-1`,
//! where `t` stands for `e^-x`. The coefficients are the complete
//! homogeneous symmetric polynomials `h_k` of the eigenvalues.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::FormalSeries;
use crate::scalar::Scalar;

/// Series variable, standing for `e^-x`.
pub const TRACE_VAR: &str = "t";

/// Eigenvalues of a holonomy; all nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomySpectrum {
    eigenvalues: Vec<Scalar>,
}

impl HolonomySpectrum {
    pub fn new(eigenvalues: Vec<Scalar>) -> Result<Self> {
        if let Some(i) = eigenvalues.iter().position(Zero::is_zero) {
            return Err(Error::Domain(format!("eigenvalue {i} is zero")));
        }
        Ok(HolonomySpectrum { eigenvalues })
    }

    /// Comma-separated scalars, e.g. `1, -1/2, (2+i)`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .enumerate()
            .filter(|(_, s)| !s.trim().is_empty())
            .map(|(i, s)| {
                s.trim().parse::<Scalar>().map_err(|e| Error::Parse {
                    location: format!("eigenvalue {i}"),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    pub fn power_sum(&self, k: u64) -> Scalar {
        self.eigenvalues.iter().map(|l| l.pow_u(k)).sum()
    }
}

/// `h_0 .. h_order` from power sums by Newton's identities
/// `k h_k = sum_{i=1}^k p_i h_{k-i}`.
pub fn complete_homogeneous(spec: &HolonomySpectrum, order: usize) -> Vec<Scalar> {
    let p: Vec<Scalar> = (0..=order as u64).map(|k| spec.power_sum(k)).collect();
    let mut h = vec![Scalar::one()];
    for k in 1..=order {
        let s: Scalar = (1..=k).map(|i| &p[i] * &h[k - i]).sum();
        h.push(s / Scalar::from_int(k as i64));
    }
    h
}

/// `sum_k h_k t^k` through `t^order`.
pub fn symmetric_trace_series(spec: &HolonomySpectrum, order: usize) -> FormalSeries {
    FormalSeries::from_scalars(TRACE_VAR, &complete_homogeneous(spec, order), order)
}

/// `prod_i (1 - lambda_i t)^-1` as a product of truncated geometric series.
pub fn inverse_determinant_series(spec: &HolonomySpectrum, order: usize) -> FormalSeries {
    let mut acc = FormalSeries::from_scalars(TRACE_VAR, &[Scalar::one()], order);
    for l in spec.eigenvalues() {
        let geometric: Vec<Scalar> = (0..=order as u64).map(|k| l.pow_u(k)).collect();
        let g = FormalSeries::from_scalars(TRACE_VAR, &geometric, order);
        acc = acc.checked_mul(&g).expect("same ring");
    }
    acc
}
