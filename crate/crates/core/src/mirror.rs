//! Local branches `P(X)` of a curve `A(X, P, Q) = 0` at `X = 0`, the series
//! `p = log P`, and the disk potential `W` with `X dW/dX = p`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{ps_log, FormalSeries, LaurentPolynomial, Ring};
use crate::scalar::Scalar;

/// Variable of the branch series.
pub const BRANCH_VAR: &str = "X";

/// How `Q` enters the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QValue {
    /// Coefficients are Laurent polynomials in `Q`.
    Symbolic,
    Numeric(Scalar),
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Symbolic => f.write_str("symbolic"),
            QValue::Numeric(q) => write!(f, "{q}"),
        }
    }
}

/// A curve written as `sum_j a_j(X) P^j` with each `a_j` a series in `X`.
struct CurveSeries {
    coeff_ring: Ring,
    by_p_power: BTreeMap<i64, FormalSeries>,
}

fn curve_series(a: &LaurentPolynomial, q: &QValue, order: usize) -> Result<CurveSeries> {
    let ring = a.ring();
    ring.index_of(BRANCH_VAR)?;
    ring.index_of("P")?;
    let mut curve = a.clone();
    let mut coeff_ring = ring.without(BRANCH_VAR)?.without("P")?;
    if let QValue::Numeric(value) = q {
        if ring.contains("Q") {
            curve = curve.substitute("Q", value)?;
            coeff_ring = coeff_ring.without("Q")?;
        }
    }
    let with_x = ring.without("P")?;
    let mut by_p_power = BTreeMap::new();
    for (j, c) in curve.coefficients_in("P")? {
        let in_x = c.embed(&with_x)?;
        let s = FormalSeries::from_polynomial(&in_x, BRANCH_VAR, order)?;
        let s = FormalSeries::new(
            BRANCH_VAR,
            &coeff_ring,
            s.coeffs()
                .iter()
                .map(|x| x.embed(&coeff_ring))
                .collect::<Result<Vec<_>>>()?,
            order,
        )?;
        by_p_power.insert(j, s);
    }
    Ok(CurveSeries {
        coeff_ring,
        by_p_power,
    })
}

impl CurveSeries {
    /// `A(X, s(X))` truncated to the order of `s`.
    fn substitute(&self, s: &FormalSeries) -> Result<FormalSeries> {
        let mut acc = FormalSeries::zero(BRANCH_VAR, &self.coeff_ring, s.order());
        for (&j, a_j) in &self.by_p_power {
            let term = a_j.truncate(s.order()).checked_mul(&s.powi(j)?)?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// `dA/dP` at `X = 0`, `P = p0`.
    fn dp_at_base(&self, p0: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        let mut acc = LaurentPolynomial::zero(&self.coeff_ring);
        for (&j, a_j) in &self.by_p_power {
            if j == 0 {
                continue;
            }
            let pw = pow_lp(p0, j - 1)?;
            acc = &acc + &(a_j.coeff(0) * &pw).scale(&Scalar::from_int(j));
        }
        Ok(acc)
    }
}

fn pow_lp(p: &LaurentPolynomial, e: i64) -> Result<LaurentPolynomial> {
    if e >= 0 {
        return Ok(p.pow(e as u32));
    }
    let inv = p
        .unit_inverse()
        .ok_or_else(|| Error::Domain(format!("`{p}` is not invertible")))?;
    Ok(inv.pow((-e) as u32))
}

/// A power-series branch `P(X)` through `P(0) = p0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSeries {
    curve: LaurentPolynomial,
    q: QValue,
    p0: Scalar,
    series: FormalSeries,
}

impl BranchSeries {
    pub fn curve(&self) -> &LaurentPolynomial {
        &self.curve
    }

    pub fn q(&self) -> &QValue {
        &self.q
    }

    pub fn p0(&self) -> &Scalar {
        &self.p0
    }

    pub fn series(&self) -> &FormalSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// The same curve data with a different series, e.g. to test that
    /// verification detects a wrong branch. The constant term must be `p0`.
    pub fn with_series(&self, series: FormalSeries) -> Result<Self> {
        let p0 = LaurentPolynomial::constant(series.ring(), self.p0.clone());
        if series.coeff(0) != &p0 {
            return Err(Error::Branch(format!(
                "series starts at `{}`, not at P0 = {}",
                series.coeff(0),
                self.p0
            )));
        }
        Ok(BranchSeries {
            series,
            ..self.clone()
        })
    }
}

impl fmt::Display for BranchSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P = {}", self.series)
    }
}

/// Solves `A(X, P(X), Q) = 0 mod X^(order+1)` with `P(0) = p0`, one order
/// at a time: `p_k = -[X^k] A(X, P_{k-1}(X)) / A_P(0, p0)`.
///
/// With symbolic `Q` the derivative `A_P(0, p0)` must be a single term in
/// `Q` so that it can be inverted; otherwise pass a numeric `Q`.
pub fn branch_series(
    a: &LaurentPolynomial,
    q: QValue,
    p0: &Scalar,
    order: usize,
) -> Result<BranchSeries> {
    if p0.is_zero() {
        return Err(Error::Branch("P0 must be nonzero".into()));
    }
    let curve = curve_series(a, &q, order)?;
    let ring = curve.coeff_ring.clone();
    let base = LaurentPolynomial::constant(&ring, p0.clone());

    let mut series = FormalSeries::constant(BRANCH_VAR, base.clone(), order);
    let at_base = curve.substitute(&series.truncate(0))?;
    if !at_base.coeff(0).is_zero() {
        return Err(Error::Branch(format!(
            "P0 = {p0} is not a root at X = 0: A(0, P0) = {}",
            at_base.coeff(0)
        )));
    }
    let slope = curve.dp_at_base(&base)?;
    if slope.is_zero() {
        return Err(Error::Branch(format!(
            "dA/dP vanishes at (X, P) = (0, {p0}): branch point, no unique power-series branch"
        )));
    }
    let slope_inv = slope.unit_inverse().ok_or_else(|| {
        Error::Branch(format!(
            "dA/dP at the base point is `{slope}`, which is not invertible over polynomials in Q; \
             give a numeric Q"
        ))
    })?;
    for k in 1..=order {
        let residual = curve.substitute(&series.truncate(k))?;
        let pk = -(residual.coeff(k) * &slope_inv);
        series.set_coeff(k, pk);
    }
    Ok(BranchSeries {
        curve: a.clone(),
        q,
        p0: p0.clone(),
        series,
    })
}

/// `log(P(X) / P0)`. The constant `log P0` is kept apart (it vanishes for
/// the usual base point `P0 = 1`).
pub fn p_series(b: &BranchSeries) -> Result<FormalSeries> {
    let inv = b.p0.inv().expect("P0 is nonzero");
    ps_log(&b.series.scale(&inv))
}

/// `W` with `X dW/dX = p`: the constant `c0` of `p` becomes the linear part
/// `c0 x` (with `x = log X`), and `c_k X^k` becomes `(c_k / k) X^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialSeries {
    pub linear: LaurentPolynomial,
    pub series: FormalSeries,
}

impl PotentialSeries {
    /// `dW/dx`, which reproduces the `p` series.
    pub fn x_derivative(&self) -> FormalSeries {
        let mut d = self.series.x_log_derivative();
        d.set_coeff(0, self.linear.clone());
        d
    }
}

impl fmt::Display for PotentialSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.linear.is_zero() {
            write!(f, "{}", self.series)
        } else {
            write!(f, "({})*x + {}", self.linear, self.series)
        }
    }
}

pub fn potential_series(p: &FormalSeries) -> PotentialSeries {
    let mut w = FormalSeries::zero(p.var(), p.ring(), p.order());
    for k in 1..=p.order() {
        w.set_coeff(k, p.coeff(k).scale(&Scalar::ratio(1, k as i64)));
    }
    PotentialSeries {
        linear: p.coeff(0).clone(),
        series: w,
    }
}

/// Outcome of substituting `P0 exp(p(X))` back into the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCheck {
    pub order: usize,
    pub residual: FormalSeries,
    /// First `k <= order` with a nonzero residual coefficient.
    pub first_failure: Option<usize>,
}

impl CurveCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for CurveCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure {
            None => write!(f, "residual vanishes through X^{}", self.order),
            Some(k) => write!(
                f,
                "residual nonzero at X^{k}: {}",
                self.residual.coeff(k)
            ),
        }
    }
}

/// Checks `A(X, P0 exp(p_series(b)), Q) = 0` through `X^order`.
pub fn verify_on_curve(a: &LaurentPolynomial, b: &BranchSeries, order: usize) -> Result<CurveCheck> {
    let order = order.min(b.order());
    let curve = curve_series(a, &b.q, order)?;
    let p = p_series(b)?.truncate(order);
    let rebuilt = p.exp()?.scale(&b.p0);
    let residual = curve.substitute(&rebuilt)?;
    let first_failure = (0..=order).find(|&k| !residual.coeff(k).is_zero());
    Ok(CurveCheck {
        order,
        residual,
        first_failure,
    })
}
