//! Gaussian moments by integration by parts, without any graphs.
//!
//! For the normalized weight `exp(-1/2 x.Q.x)`, `<x_i P> = sum_j Q^{ij} <d_j P>`.
//! Applied to a monomial `x^a` with `a_i > 0` this gives
//! `<x^a> = sum_j Q^{ij} b_j <x^(b - e_j)>` where `b = a - e_i`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::forms::{CubicForm, QuadraticForm};
use super::{factorial, HbarSeries};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Ring};
use crate::scalar::Scalar;

type Monomial = Vec<u32>;
type Poly = HashMap<Monomial, Scalar>;

struct Moments<'a> {
    qinv: &'a [Vec<Scalar>],
    memo: HashMap<Monomial, Scalar>,
}

impl Moments<'_> {
    fn moment(&mut self, a: &Monomial) -> Scalar {
        let total: u32 = a.iter().sum();
        if total == 0 {
            return Scalar::one();
        }
        if total % 2 == 1 {
            return Scalar::zero();
        }
        if let Some(v) = self.memo.get(a) {
            return v.clone();
        }
        let i = a.iter().position(|&e| e > 0).expect("nonzero monomial");
        let mut b = a.clone();
        b[i] -= 1;
        let mut acc = Scalar::zero();
        for j in 0..b.len() {
            if b[j] == 0 || self.qinv[i][j].is_zero() {
                continue;
            }
            let mut d = b.clone();
            d[j] -= 1;
            let inner = self.moment(&d);
            acc += &self.qinv[i][j] * &(Scalar::from_int(b[j] as i64) * inner);
        }
        self.memo.insert(a.clone(), acc.clone());
        acc
    }
}

fn multiply(f: &Poly, g: &Poly) -> Poly {
    let mut out: Poly = HashMap::new();
    for (ma, ca) in f {
        for (mb, cb) in g {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Same contract as the graph sum, computed from `<(C x x x)^m> / m!`.
pub fn stein_oracle_series(q: &QuadraticForm, c: &CubicForm, order: usize) -> Result<HbarSeries> {
    let n = q.dim();
    if c.dim() != n {
        return Err(Error::InvalidArgument(format!(
            "quadratic form has dimension {n} but cubic form has {}",
            c.dim()
        )));
    }
    let mut cubic: Poly = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut m = vec![0u32; n];
                m[i] += 1;
                m[j] += 1;
                m[k] += 1;
                *cubic.entry(m).or_insert_with(Scalar::zero) += c.get(i, j, k).clone();
            }
        }
    }
    cubic.retain(|_, v| !v.is_zero());

    let mut moments = Moments {
        qinv: q.inverse(),
        memo: HashMap::new(),
    };
    let ring = Ring::empty();
    let mut power: Poly = HashMap::from([(vec![0u32; n], Scalar::one())]);
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        if m > 0 {
            power = multiply(&power, &cubic);
        }
        let mut terms: Vec<(&Monomial, &Scalar)> = power.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        let mut value = Scalar::zero();
        for (mono, coef) in terms {
            value += coef * &moments.moment(mono);
        }
        coeffs.push(LaurentPolynomial::constant(&ring, value / factorial(m)));
    }
    Ok(HbarSeries::from_coefficients(&ring, coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_couplings() {
        let q = QuadraticForm::parse_json("[[1]]").unwrap();
        let c = CubicForm::parse_json("[[[1]]]").unwrap();
        let z = stein_oracle_series(&q, &c, 4).unwrap();
        assert_eq!(z.scalar(1), Some(Scalar::from_int(0)));
        assert_eq!(z.scalar(2), Some(Scalar::ratio(15, 2)));
        assert_eq!(z.scalar(3), Some(Scalar::from_int(0)));
    }

    #[test]
    fn gaussian_moments_scale_with_the_variance() {
        // <x^4> = 3 sigma^4 with sigma^2 = 1/q
        let q = QuadraticForm::parse_json("[[2]]").unwrap();
        let mut mom = Moments {
            qinv: q.inverse(),
            memo: HashMap::new(),
        };
        assert_eq!(mom.moment(&vec![4]), Scalar::ratio(3, 4));
    }
}
