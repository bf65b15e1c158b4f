//! Wilson loops `W(K) = [N]_q P_K` at `q = exp(2 pi i / (k + N))`, with
//! `a = q^(N/2)` and `z = q^(1/2) - q^(-1/2)`.
//!
//! Everything is computed exactly in `zeta = q^(1/2) = exp(pi i / (k + N))`:
//! the substituted polynomial is a Laurent polynomial in `zeta`, which is
//! then reduced modulo the cyclotomic polynomial of order `2|k + N|`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::diagram::LinkDiagram;
use super::skein::{homfly_with, HomflyOptions};
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::scalar::Scalar;

type Laurent = BTreeMap<i64, Scalar>;
/// Dense polynomial, index = exponent.
type Dense = Vec<Scalar>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn laurent_pow(a: &Laurent, n: u32) -> Laurent {
    let mut acc = Laurent::from([(0, Scalar::one())]);
    for _ in 0..n {
        acc = laurent_mul(&acc, a);
    }
    acc
}

fn zeta_minus_inverse() -> Laurent {
    Laurent::from([(1, Scalar::one()), (-1, -Scalar::one())])
}

/// `[N] = zeta^(N-1) + zeta^(N-3) + ... + zeta^(1-N)`.
fn quantum_integer(n: i64) -> Laurent {
    (0..n).map(|j| (n - 1 - 2 * j, Scalar::one())).collect()
}

/// Exact division by `zeta - zeta^-1`, i.e. by `zeta^-1 (zeta^2 - 1)`.
fn divide_by_z(t: &Laurent) -> Option<Laurent> {
    let Some((&lo, _)) = t.iter().next() else {
        return Some(Laurent::new());
    };
    let hi = *t.keys().next_back().expect("nonempty");
    // dense numerator in zeta^(e - lo), divided by zeta^2 - 1
    let mut num: Dense = vec![Scalar::zero(); (hi - lo + 1) as usize];
    for (e, c) in t {
        num[(e - lo) as usize] = c.clone();
    }
    if num.len() < 3 {
        return None;
    }
    let mut quot: Dense = vec![Scalar::zero(); num.len() - 2];
    for d in (2..num.len()).rev() {
        let c = num[d].clone();
        if c.is_zero() {
            continue;
        }
        quot[d - 2] = c.clone();
        num[d] = Scalar::zero();
        num[d - 2] += c;
    }
    if !num[0].is_zero() || !num[1].is_zero() {
        return None;
    }
    // t = zeta^lo * quot * (zeta^2 - 1) and z = zeta^-1 (zeta^2 - 1)
    Some(
        quot.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + 1 + i as i64, c))
            .collect(),
    )
}

/// `Phi_n` with integer coefficients, by dividing `x^n - 1` by the
/// cyclotomic factors of the proper divisors of `n`.
pub fn cyclotomic(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let div = cyclotomic(d);
        poly = exact_div_monic(&poly, &div);
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            r[i + j] -= c * dc;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Remainder of a Laurent polynomial in a primitive `2m`-th root of unity,
/// as coefficients of `zeta^0 .. zeta^(phi(2m) - 1)`.
fn reduce_cyclotomic(t: &Laurent, m: u64) -> Dense {
    let order = 2 * m as i64;
    let phi = cyclotomic(2 * m);
    let deg = phi.len() - 1;
    let mut dense: Dense = vec![Scalar::zero(); order as usize];
    for (e, c) in t {
        dense[e.rem_euclid(order) as usize] += c.clone();
    }
    for i in (deg..dense.len()).rev() {
        let c = dense[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &pc) in phi.iter().enumerate() {
            let sub = &c * &Scalar::from_int(pc);
            dense[i - deg + j] -= sub;
        }
    }
    dense.truncate(deg);
    while dense.last().is_some_and(|c| c.is_zero()) {
        dense.pop();
    }
    dense
}

/// Exact and floating evaluations of a Wilson loop.
#[derive(Clone, Debug, PartialEq)]
pub struct WilsonLoop {
    pub n: i64,
    pub k: i64,
    /// Coefficients of `zeta^j`, reduced modulo the cyclotomic polynomial.
    pub exact: Vec<Scalar>,
    /// The exact value evaluated at `zeta = exp(pi i / (k + N))`.
    pub value: Complex64,
    /// Direct complex substitution into the HOMFLY polynomial; `None` when
    /// `z = 0` and the polynomial has negative powers of `z`.
    pub float_value: Option<Complex64>,
}

impl WilsonLoop {
    pub fn routes_agree(&self, tol: f64) -> bool {
        self.float_value.is_none_or(|f| (f - self.value).norm() <= tol)
    }

    /// The exact value as a polynomial in `zeta`.
    pub fn exact_string(&self) -> String {
        let mut parts = Vec::new();
        for (j, c) in self.exact.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match j {
                0 => String::new(),
                1 => "zeta".to_string(),
                _ => format!("zeta^{j}"),
            };
            let term = if power.is_empty() {
                c.to_string()
            } else if *c == Scalar::one() {
                power
            } else if *c == -Scalar::one() {
                format!("-{power}")
            } else {
                format!("{c}*{power}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for WilsonLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {:.12} {:+.12}i",
            self.exact_string(),
            self.value.re,
            self.value.im
        )
    }
}

fn zeta_power(e: i64, level: i64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI * e as f64 / level as f64)
}

/// Wilson loop of a HOMFLY polynomial in `[a, z]`.
pub fn wilson_from_homfly(p: &LaurentPolynomial, n: i64, k: i64) -> Result<WilsonLoop> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("rank N = {n} must be at least 1")));
    }
    let level = k + n;
    if level == 0 {
        return Err(Error::InvalidArgument("k + N must be nonzero".into()));
    }
    let a_idx = p.ring().index_of("a")?;
    let z_idx = p.ring().index_of("z")?;
    let zmin = p.raw_terms().map(|(e, _)| e[z_idx]).min().unwrap_or(0).min(0);

    // numerator: [N] * sum c zeta^(N i) (zeta - zeta^-1)^(j - zmin)
    let z = zeta_minus_inverse();
    let mut numerator = Laurent::new();
    for (e, c) in p.raw_terms() {
        let term = laurent_mul(
            &Laurent::from([(n * e[a_idx], c.clone())]),
            &laurent_pow(&z, (e[z_idx] - zmin) as u32),
        );
        for (ex, cx) in term {
            *numerator.entry(ex).or_insert_with(Scalar::zero) += cx;
        }
    }
    numerator.retain(|_, c| !c.is_zero());
    let mut value = laurent_mul(&numerator, &quantum_integer(n));
    for _ in 0..(-zmin) {
        value = divide_by_z(&value).ok_or_else(|| {
            Error::Domain("Wilson loop is not a Laurent polynomial in q^(1/2)".into())
        })?;
    }
    let m = level.unsigned_abs();
    let exact = reduce_cyclotomic(&value, m);
    let exact_value = exact
        .iter()
        .enumerate()
        .map(|(j, c)| c.to_complex() * zeta_power(j as i64, level))
        .sum();

    let zeta = zeta_power(1, level);
    let a = zeta.powi(n as i32);
    let zz = zeta - zeta.inv();
    let float_value = if zz.norm() < 1e-12 && zmin < 0 {
        None
    } else {
        let prefactor: Complex64 = (0..n).map(|j| zeta_power(n - 1 - 2 * j, level)).sum();
        let mut vals = vec![Complex64::zero(); p.ring().len()];
        vals[a_idx] = a;
        vals[z_idx] = zz;
        Some(prefactor * p.eval_complex(&vals))
    };
    Ok(WilsonLoop {
        n,
        k,
        exact,
        value: exact_value,
        float_value,
    })
}

/// `W(K)` for a diagram.
pub fn wilson_loop(d: &LinkDiagram, n: i64, k: i64) -> Result<WilsonLoop> {
    wilson_loop_with(d, n, k, HomflyOptions::default())
}

pub fn wilson_loop_with(d: &LinkDiagram, n: i64, k: i64, options: HomflyOptions) -> Result<WilsonLoop> {
    if n < 1 || k + n == 0 {
        // report the parameter error before doing any skein work
        return wilson_from_homfly(&LaurentPolynomial::one(&super::homfly_ring()), n, k);
    }
    let p = homfly_with(d, options)?;
    wilson_from_homfly(&p, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homfly::parse_pd;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn unknot_rank_one_is_one() {
        for k in 1..=6 {
            let w = wilson_loop(&LinkDiagram::unknot(), 1, k).unwrap();
            assert_eq!(w.exact, vec![Scalar::one()]);
        }
    }

    #[test]
    fn unknot_matches_quantum_dimension() {
        for n in 1..=4i64 {
            for k in 1..=6i64 {
                let w = wilson_loop(&LinkDiagram::unknot(), n, k).unwrap();
                let q = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / (k + n) as f64);
                let expected = (q.powf(n as f64 / 2.0) - q.powf(-(n as f64) / 2.0))
                    / (q.sqrt() - q.sqrt().inv());
                assert!((w.value - expected).norm() < 1e-9, "N={n} k={k}");
                assert!(w.routes_agree(1e-9));
            }
        }
    }

    #[test]
    fn trefoil_routes_agree() {
        let d = parse_pd("X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]").unwrap();
        let w = wilson_loop(&d, 2, 3).unwrap();
        assert!(w.routes_agree(1e-9));
        assert!(w.float_value.is_some());
    }

    #[test]
    fn links_divide_exactly() {
        let hopf = parse_pd("X[1,3,2,4];X[3,1,4,2]").unwrap();
        for (n, k) in [(1, 1), (2, 3), (3, 2)] {
            assert!(wilson_loop(&hopf, n, k).unwrap().routes_agree(1e-9));
        }
        // q = 1 has no float route for links but stays exact
        let w = wilson_loop(&LinkDiagram::unlink(2), 2, -1).unwrap();
        assert!(w.float_value.is_none());
        assert_eq!(w.exact, vec![Scalar::from_int(4)]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(wilson_loop(&LinkDiagram::unknot(), 0, 3).is_err());
        assert!(wilson_loop(&LinkDiagram::unknot(), 2, -2).is_err());
    }
}
