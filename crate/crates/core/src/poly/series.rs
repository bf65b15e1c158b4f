use std::fmt;

use num_traits::One;

use super::laurent::{LaurentPolynomial, Ring};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated power series `Σ_{k=0}^{N} c_k t^k` whose coefficients are
/// Laurent polynomials in the remaining variables.
///
/// Exactly `N + 1` coefficient slots are stored; products and compositions
/// drop everything past order `N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalSeries {
    var: String,
    ring: Ring,
    coeffs: Vec<LaurentPolynomial>,
}

impl FormalSeries {
    /// Builds a series of the given `order`, padding with zeros or dropping
    /// coefficients past the order.
    pub fn new(
        var: &str,
        ring: &Ring,
        coeffs: Vec<LaurentPolynomial>,
        order: usize,
    ) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: bad.ring().to_string(),
            });
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, LaurentPolynomial::zero(ring));
        Ok(FormalSeries {
            var: var.to_string(),
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(var: &str, ring: &Ring, order: usize) -> Self {
        FormalSeries {
            var: var.to_string(),
            ring: ring.clone(),
            coeffs: vec![LaurentPolynomial::zero(ring); order + 1],
        }
    }

    pub fn one(var: &str, ring: &Ring, order: usize) -> Self {
        Self::constant(var, LaurentPolynomial::one(ring), order)
    }

    pub fn constant(var: &str, c: LaurentPolynomial, order: usize) -> Self {
        let ring = c.ring().clone();
        let mut s = Self::zero(var, &ring, order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t` itself.
    pub fn variable(var: &str, ring: &Ring, order: usize) -> Self {
        let mut s = Self::zero(var, ring, order);
        if order >= 1 {
            s.coeffs[1] = LaurentPolynomial::one(ring);
        }
        s
    }

    /// Series with scalar coefficients over the empty ring.
    pub fn from_scalars(var: &str, values: &[Scalar], order: usize) -> Self {
        let ring = Ring::empty();
        let coeffs = values
            .iter()
            .map(|v| LaurentPolynomial::constant(&ring, v.clone()))
            .collect();
        Self::new(var, &ring, coeffs, order).expect("same ring")
    }

    /// Reads a polynomial in a ring containing `var` as a series in `var`;
    /// the coefficient ring is the input ring minus `var`.
    pub fn from_polynomial(p: &LaurentPolynomial, var: &str, order: usize) -> Result<Self> {
        let coeff_ring = p.ring().without(var)?;
        if let Some(lo) = p.min_degree(var)? {
            if lo < 0 {
                return Err(Error::Domain(format!(
                    "`{var}^{lo}` has no power-series expansion at {var} = 0"
                )));
            }
        }
        let mut s = Self::zero(var, &coeff_ring, order);
        for (k, c) in p.coefficients_in(var)? {
            if (k as usize) <= order {
                s.coeffs[k as usize] = c.embed(&coeff_ring)?;
            }
        }
        Ok(s)
    }

    /// Inverse of `from_polynomial`: the truncated sum as a polynomial in
    /// `target`, which must contain `var` and the coefficient variables.
    pub fn to_polynomial(&self, target: &Ring) -> Result<LaurentPolynomial> {
        let vi = target.index_of(&self.var)?;
        let mut out = LaurentPolynomial::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; target.len()];
            e[vi] = k as i64;
            let mono = LaurentPolynomial::monomial(target, e, Scalar::one());
            out = &out + &(&c.embed(target)? * &mono);
        }
        Ok(out)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPolynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPolynomial] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: LaurentPolynomial) {
        assert_eq!(c.ring(), &self.ring);
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(order + 1);
        s.coeffs.resize(order + 1, LaurentPolynomial::zero(&self.ring));
        s
    }

    fn compatible(&self, other: &Self) -> Result<usize> {
        if self.var != other.var || self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: format!("{}; {}", self.ring, self.var),
                right: format!("{}; {}", other.ring, other.var),
            });
        }
        Ok(self.order().min(other.order()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.compatible(other)?;
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let n = self.compatible(other)?;
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let n = self.compatible(other)?;
        let mut coeffs = vec![LaurentPolynomial::zero(&self.ring); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Ok(self.with_coeffs(coeffs))
    }

    fn with_coeffs(&self, coeffs: Vec<LaurentPolynomial>) -> Self {
        FormalSeries {
            var: self.var.clone(),
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn mul_coefficient(&self, c: &LaurentPolynomial) -> Result<Self> {
        self.coeffs
            .iter()
            .map(|x| x.checked_mul(c))
            .collect::<Result<Vec<_>>>()
            .map(|v| self.with_coeffs(v))
    }

    /// Multiplicative inverse; the constant term must be a unit of the
    /// coefficient ring (a single term).
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or_else(|| {
            Error::Domain(format!(
                "constant term `{}` is not invertible",
                self.coeffs[0]
            ))
        })?;
        let n = self.order();
        let mut out = vec![LaurentPolynomial::zero(&self.ring); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = LaurentPolynomial::zero(&self.ring);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -&(&inv0 * &acc);
        }
        Ok(self.with_coeffs(out))
    }

    /// Integer power; negative exponents go through `inverse`.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.var, &self.ring, self.order());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Formal logarithm of a series with constant term exactly 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != LaurentPolynomial::one(&self.ring) {
            return Err(Error::Domain(format!(
                "log needs constant term 1, found `{}`",
                self.coeffs[0]
            )));
        }
        // s' = t' s, so k t_k = k s_k - sum_{j<k} j t_j s_{k-j}
        let n = self.order();
        let mut t = vec![LaurentPolynomial::zero(&self.ring); n + 1];
        for k in 1..=n {
            let mut acc = self.coeffs[k].scale(&Scalar::from_int(k as i64));
            for j in 1..k {
                if t[j].is_zero() || self.coeffs[k - j].is_zero() {
                    continue;
                }
                let term = (&t[j] * &self.coeffs[k - j]).scale(&Scalar::from_int(j as i64));
                acc = &acc - &term;
            }
            t[k] = acc.scale(&Scalar::ratio(1, k as i64));
        }
        Ok(self.with_coeffs(t))
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(format!(
                "exp needs constant term 0, found `{}`",
                self.coeffs[0]
            )));
        }
        let n = self.order();
        let mut e = vec![LaurentPolynomial::zero(&self.ring); n + 1];
        e[0] = LaurentPolynomial::one(&self.ring);
        for k in 1..=n {
            let mut acc = LaurentPolynomial::zero(&self.ring);
            for j in 1..=k {
                if self.coeffs[j].is_zero() || e[k - j].is_zero() {
                    continue;
                }
                let term = (&self.coeffs[j] * &e[k - j]).scale(&Scalar::from_int(j as i64));
                acc = &acc + &term;
            }
            e[k] = acc.scale(&Scalar::ratio(1, k as i64));
        }
        Ok(self.with_coeffs(e))
    }

    /// `t d/dt`: multiplies the k-th coefficient by k.
    pub fn x_log_derivative(&self) -> Self {
        self.with_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Scalar::from_int(k as i64)))
                .collect(),
        )
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coef = if c.num_terms() > 1 || (k > 0 && cs.contains('*')) {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match k {
                0 => coef,
                _ => {
                    let power = if k == 1 {
                        self.var.clone()
                    } else {
                        format!("{}^{k}", self.var)
                    };
                    if c.is_constant() && c.constant_term().is_one() {
                        power
                    } else {
                        format!("{coef}*{power}")
                    }
                }
            });
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "{} + O({}^{})", parts.join(" + "), self.var, self.order() + 1)
    }
}
