//! Hermitian one-matrix model with weight `exp(-1/2 tr M^2 + g tr M^3)`.
//!
//! Each pairing of the `tr M^3` factors is a ribbon graph whose faces are
//! the closed index loops, so it contributes `N^faces`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::pairing::enumerate_pairings;
use super::ribbon::{ribbon_faces, RibbonGraph};
use super::{factorial, HbarSeries};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Ring};
use crate::scalar::Scalar;

fn n_ring() -> Ring {
    Ring::new(&["N"]).expect("valid ring")
}

fn face_counts(m: usize) -> BTreeMap<usize, u64> {
    let faces: Vec<usize> = enumerate_pairings(m)
        .into_par_iter()
        .map(|p| RibbonGraph::standard(p).face_count())
        .collect();
    let mut counts = BTreeMap::new();
    for h in faces {
        *counts.entry(h).or_insert(0) += 1;
    }
    counts
}

/// Coefficient of `g^m` for `m = 0..=order`, each a polynomial in `N`.
pub fn matrix_model_series(order: usize) -> HbarSeries {
    let ring = n_ring();
    let coeffs = (0..=order)
        .map(|m| {
            let norm = factorial(m).inv().expect("nonzero");
            let terms = face_counts(m).into_iter().map(|(h, count)| {
                (vec![h as i64], Scalar::from_int(count as i64) * norm.clone())
            });
            LaurentPolynomial::from_terms(&ring, terms)
        })
        .collect();
    HbarSeries::from_coefficients(&ring, coeffs, order)
}

/// The series evaluated at an integer rank.
pub fn matrix_model_at(n: i64, order: usize) -> Result<HbarSeries> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("matrix rank N = {n} must be at least 1")));
    }
    let series = matrix_model_series(order);
    let ring = Ring::empty();
    let coeffs = (0..=order)
        .map(|m| {
            let v = series.coefficient(m).eval_slice(&[Scalar::from_int(n)])?;
            Ok(LaurentPolynomial::constant(&ring, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HbarSeries::from_coefficients(&ring, coeffs, order))
}

/// `(g, h)` tally of connected ribbon graphs at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonCensusEntry {
    pub genus: usize,
    pub faces: usize,
    pub loops: usize,
    pub pairings: u64,
}

/// Connected pairings of order `m` grouped by the topology of their
/// standard ribbon structure.
pub fn ribbon_census(m: usize) -> Vec<RibbonCensusEntry> {
    let mut tally: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for p in enumerate_pairings(m) {
        if m == 0 || !p.is_connected() {
            continue;
        }
        let inv = ribbon_faces(&RibbonGraph::standard(p)).expect("connected");
        *tally.entry((inv.genus, inv.faces, inv.loops)).or_insert(0) += 1;
    }
    tally
        .into_iter()
        .map(|((genus, faces, loops), pairings)| RibbonCensusEntry {
            genus,
            faces,
            loops,
            pairings,
        })
        .collect()
}

/// Counts Wick pairings of matrix entries `(row, col)` with propagator
/// `<M_ab M_cd> = delta_ad delta_bc`.
fn wick_count(entries: &[(usize, usize)], used: &mut [bool]) -> u64 {
    let Some(first) = used.iter().position(|u| !u) else {
        return 1;
    };
    used[first] = true;
    let (a, b) = entries[first];
    let mut total = 0;
    for j in first + 1..entries.len() {
        if used[j] {
            continue;
        }
        let (c, d) = entries[j];
        if a == d && b == c {
            used[j] = true;
            total += wick_count(entries, used);
            used[j] = false;
        }
    }
    used[first] = false;
    total
}

/// `<(tr M^3)^m> / m!` at rank `n`, summing over every assignment of matrix
/// indices and Wick-contracting the entries directly. Cost grows like
/// `n^(3m)`, so keep it to small cases.
pub fn wick_oracle(n: usize, m: usize) -> Scalar {
    if (3 * m) % 2 == 1 {
        return Scalar::zero();
    }
    if m == 0 {
        return Scalar::one();
    }
    let slots = 3 * m;
    let total_assignments = n.pow(slots as u32);
    let count: u64 = (0..total_assignments)
        .into_par_iter()
        .map(|code| {
            let mut idx = vec![0usize; slots];
            let mut c = code;
            for x in idx.iter_mut() {
                *x = c % n;
                c /= n;
            }
            let entries: Vec<(usize, usize)> = (0..m)
                .flat_map(|v| {
                    let i = &idx[3 * v..3 * v + 3];
                    [(i[0], i[1]), (i[1], i[2]), (i[2], i[0])]
                })
                .collect();
            wick_count(&entries, &mut vec![false; slots])
        })
        .sum();
    Scalar::from_int(count as i64) / factorial(m)
}

/// Interpolates the order-`m` coefficient as a polynomial in `N` from the
/// Wick oracle at `N = 1..=3m/2 + 1`; the face count never exceeds `3m/2`.
pub fn interpolate_oracle(m: usize) -> LaurentPolynomial {
    let ring = n_ring();
    let points = 3 * m / 2 + 1;
    let xs: Vec<i64> = (1..=points as i64).collect();
    let ys: Vec<Scalar> = xs.iter().map(|&x| wick_oracle(x as usize, m)).collect();
    let n = LaurentPolynomial::var(&ring, "N").expect("N");
    let mut out = LaurentPolynomial::zero(&ring);
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = LaurentPolynomial::constant(&ring, ys[i].clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = &n - &LaurentPolynomial::constant(&ring, Scalar::from_int(*xj));
            basis = (&basis * &factor).scale(&Scalar::ratio(1, xi - xj));
        }
        out = &out + &basis;
    }
    out
}
