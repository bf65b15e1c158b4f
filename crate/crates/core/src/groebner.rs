//! Buchberger's algorithm over the Gaussian rationals with a two-block
//! elimination order.
//!
//! Variables are taken in ring order. The first `elim` variables form the
//! elimination block; each block is ordered by graded reverse lexicographic
//! order and the first block dominates. Basis elements free of the first
//! block then generate the elimination ideal.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Ring};
use crate::scalar::Scalar;

/// Work caps. Exceeding either one aborts with [`Error::ResourceLimit`]
/// instead of returning a partial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    /// Maximum number of S-polynomial reductions.
    pub max_steps: usize,
    /// Maximum total degree of any basis element.
    pub max_degree: i64,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_steps: 20_000,
            max_degree: 64,
        }
    }
}

type Mono = Vec<i64>;

#[derive(Clone, Debug)]
struct Poly {
    /// Descending in the monomial order; never holds zero coefficients.
    terms: Vec<(Mono, Scalar)>,
}

#[derive(Clone, Copy)]
struct BlockOrder {
    elim: usize,
}

impl BlockOrder {
    fn grevlex(a: &[i64], b: &[i64]) -> Ordering {
        let da: i64 = a.iter().sum();
        let db: i64 = b.iter().sum();
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    }

    fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        Self::grevlex(&a[..self.elim], &b[..self.elim])
            .then_with(|| Self::grevlex(&a[self.elim..], &b[self.elim..]))
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i64], b: &[i64]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[i64], b: &[i64]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Poly {
    fn from_lp(p: &LaurentPolynomial, ord: BlockOrder) -> Self {
        let mut terms: Vec<(Mono, Scalar)> =
            p.raw_terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly { terms }
    }

    fn to_lp(&self, ring: &Ring) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &Scalar {
        &self.terms[0].1
    }

    fn degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.iter().sum::<i64>()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        for (_, c) in &mut self.terms {
            *c = &*c * &inv;
        }
    }

    /// `self - coef * x^shift * other`
    fn sub_mul(&self, coef: &Scalar, shift: &[i64], other: &Poly, ord: BlockOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Mono, Scalar)> = other
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(shift).map(|(a, b)| a + b).collect(), -(c * coef)))
            .collect();
        while i < self.terms.len() || j < shifted.len() {
            if j == shifted.len() {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() {
                out.push(shifted[j].clone());
                j += 1;
            } else {
                match ord.cmp(&self.terms[i].0, &shifted[j].0) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(shifted[j].clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = &self.terms[i].1 + &shifted[j].1;
                        if !c.is_zero() {
                            out.push((self.terms[i].0.clone(), c));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Poly { terms: out }
    }

    /// Full reduction modulo `basis`.
    fn reduce(&self, basis: &[Poly], ord: BlockOrder) -> Poly {
        let mut p = self.clone();
        let mut rest: Vec<(Mono, Scalar)> = Vec::new();
        while !p.is_zero() {
            let (m, c) = p.terms[0].clone();
            match basis.iter().find(|g| divides(g.lm(), &m)) {
                Some(g) => {
                    let coef = &c / g.lc();
                    p = p.sub_mul(&coef, &diff(&m, g.lm()), g, ord);
                }
                None => {
                    rest.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Poly { terms: rest }
    }

    fn s_poly(f: &Poly, g: &Poly, ord: BlockOrder) -> Poly {
        let l = lcm(f.lm(), g.lm());
        let zero = Poly { terms: Vec::new() };
        let minus_inv_f = -(Scalar::one() / f.lc().clone());
        let inv_g = Scalar::one() / g.lc().clone();
        zero.sub_mul(&minus_inv_f, &diff(&l, f.lm()), f, ord)
            .sub_mul(&inv_g, &diff(&l, g.lm()), g, ord)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// All inputs must share a ring and have non-negative exponents. The first
/// `elim` ring variables form the elimination block. The result is monic,
/// interreduced, and sorted by descending leading monomial; the zero ideal
/// gives an empty basis.
pub fn groebner_basis(
    gens: &[LaurentPolynomial],
    elim: usize,
    limits: GroebnerLimits,
) -> Result<Vec<LaurentPolynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if elim > ring.len() {
        return Err(Error::InvalidArgument(format!(
            "elimination block of {elim} variables in a ring of {}",
            ring.len()
        )));
    }
    for g in gens {
        if g.ring() != &ring {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: g.ring().to_string(),
            });
        }
        if !g.is_polynomial() {
            return Err(Error::Domain(format!(
                "`{g}` has negative exponents; clear denominators first"
            )));
        }
    }
    let ord = BlockOrder { elim };

    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let mut p = Poly::from_lp(g, ord).reduce(&basis, ord);
        if !p.is_zero() {
            p.make_monic();
            basis.push(p);
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut steps = 0usize;
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let coprime = fi.lm().iter().zip(fj.lm()).all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            continue;
        }
        steps += 1;
        if steps > limits.max_steps {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis needed more than {} S-polynomial reductions",
                limits.max_steps
            )));
        }
        let mut h = Poly::s_poly(fi, fj, ord).reduce(&basis, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.degree() > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis element of degree {} exceeds the cap {}",
                h.degree(),
                limits.max_degree
            )));
        }
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pairs.push((i, k));
        }
    }

    // minimalize
    let mut keep: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let mut r = keep[i].reduce(&others, ord);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| ord.cmp(b.lm(), a.lm()));
    Ok(reduced.iter().map(|p| p.to_lp(&ring)).collect())
}

/// Whether `1` lies in the ideal generated by `gens`.
pub fn contains_one(gens: &[LaurentPolynomial], limits: GroebnerLimits) -> Result<bool> {
    let gb = groebner_basis(gens, 0, limits)?;
    Ok(gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(&["u", "X", "P"]).unwrap()
    }

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, &ring()).unwrap()
    }

    #[test]
    fn eliminates_u_from_synthetic_system() {
        let gb = groebner_basis(&[p("u^2 - X"), p("u - P")], 1, GroebnerLimits::default())
            .unwrap();
        let elim: Vec<_> = gb
            .iter()
            .filter(|g| !g.involves("u").unwrap())
            .collect();
        assert_eq!(elim.len(), 1);
        assert_eq!(elim[0], &p("P^2 - X"));
    }

    #[test]
    fn unit_ideal() {
        assert!(contains_one(&[p("u - 1"), p("u - 2")], GroebnerLimits::default()).unwrap());
        assert!(!contains_one(&[p("u^2 - 4"), p("u - 2")], GroebnerLimits::default()).unwrap());
    }

    #[test]
    fn basis_of_zero_ideal_is_empty() {
        assert!(groebner_basis(&[p("0")], 0, GroebnerLimits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn step_cap_is_enforced() {
        let limits = GroebnerLimits {
            max_steps: 0,
            max_degree: 64,
        };
        let r = groebner_basis(&[p("u^2 - X"), p("u*X - P")], 1, limits);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn rejects_laurent_input() {
        let r = groebner_basis(&[p("u^-1 - X")], 1, GroebnerLimits::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn reduced_basis_generates_same_ideal() {
        // every input reduces to zero modulo the basis
        let gens = [p("u^2*X - P"), p("u*P^2 - X"), p("X*P - 1")];
        let gb = groebner_basis(&gens, 1, GroebnerLimits::default()).unwrap();
        let ord = BlockOrder { elim: 1 };
        let polys: Vec<Poly> = gb.iter().map(|g| Poly::from_lp(g, ord)).collect();
        for g in &gens {
            assert!(Poly::from_lp(g, ord).reduce(&polys, ord).is_zero());
        }
    }
}
