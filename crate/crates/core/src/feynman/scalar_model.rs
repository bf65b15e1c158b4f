//! Graph-sum evaluation of the scalar model.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::forms::{CubicForm, QuadraticForm};
use super::pairing::{graph_classes, Pairing};
use super::{factorial, HbarSeries};
use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Ring};
use crate::scalar::Scalar;

/// Relabels vertices so that each next vertex has as many half-edges as
/// possible joined to those already placed. This keeps the set of open
/// half-edges small during contraction.
fn contraction_order(p: &Pairing) -> Pairing {
    let v = p.vertices();
    let mut placed = vec![false; v];
    let mut order = Vec::with_capacity(v);
    for _ in 0..v {
        let best = (0..v)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| {
                let joined = (0..3).filter(|&k| placed[p.partner(3 * u + k) / 3]).count();
                (joined, std::cmp::Reverse(u))
            })
            .expect("unplaced vertex");
        placed[best] = true;
        order.push(best);
    }
    let mut new_of = vec![0; v];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let mut partner = vec![0; 3 * v];
    for h in 0..3 * v {
        let t = p.partner(h);
        partner[3 * new_of[h / 3] + h % 3] = 3 * new_of[t / 3] + t % 3;
    }
    Pairing::from_partner(partner)
}

/// Weight of a single pairing: sum over index labels of the half-edges of
/// `prod_v C_{i(3v) i(3v+1) i(3v+2)} * prod_edges Q^{i(a) i(b)}`.
///
/// The sum is contracted vertex by vertex, keeping only the labels of
/// half-edges whose partner has not been reached yet.
pub fn pairing_weight(p: &Pairing, q: &QuadraticForm, c: &CubicForm) -> Scalar {
    let p = &contraction_order(p);
    let n = q.dim();
    let qi = q.inverse();
    // open half-edges in the order they were opened, with their labels
    let mut open: Vec<usize> = Vec::new();
    let mut state: HashMap<Vec<usize>, Scalar> = HashMap::from([(Vec::new(), Scalar::from(1))]);
    for v in 0..p.vertices() {
        let hs = [3 * v, 3 * v + 1, 3 * v + 2];
        let closing: Vec<(usize, usize)> = hs
            .iter()
            .enumerate()
            .filter_map(|(k, &h)| open.iter().position(|&o| o == p.partner(h)).map(|pos| (k, pos)))
            .collect();
        let internal: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
            .filter(|&(a, b)| p.partner(hs[a]) == hs[b])
            .collect();
        let opening: Vec<usize> = (0..3).filter(|&k| p.partner(hs[k]) / 3 > v).collect();
        let kept: Vec<usize> = (0..open.len())
            .filter(|pos| !closing.iter().any(|(_, c)| c == pos))
            .collect();

        let mut next: HashMap<Vec<usize>, Scalar> = HashMap::new();
        for (labels, w) in &state {
            for i in 0..n * n * n {
                let idx = [i / (n * n), (i / n) % n, i % n];
                let cv = c.get(idx[0], idx[1], idx[2]);
                if cv.is_zero() {
                    continue;
                }
                let mut f = w * cv;
                for &(k, pos) in &closing {
                    f = &f * &qi[labels[pos]][idx[k]];
                }
                for &(a, b) in &internal {
                    f = &f * &qi[idx[a]][idx[b]];
                }
                if f.is_zero() {
                    continue;
                }
                let mut key: Vec<usize> = kept.iter().map(|&pos| labels[pos]).collect();
                key.extend(opening.iter().map(|&k| idx[k]));
                *next.entry(key).or_insert_with(Scalar::zero) += f;
            }
        }
        state = next;
        open = kept.iter().map(|&pos| open[pos]).collect();
        open.extend(opening.iter().map(|&k| hs[k]));
    }
    state.remove(&Vec::new()).unwrap_or_else(Scalar::zero)
}

fn check_dims(q: &QuadraticForm, c: &CubicForm) -> Result<()> {
    if q.dim() != c.dim() {
        return Err(Error::InvalidArgument(format!(
            "quadratic form has dimension {} but cubic form has {}",
            q.dim(),
            c.dim()
        )));
    }
    Ok(())
}

fn graph_sum(q: &QuadraticForm, c: &CubicForm, order: usize, connected_only: bool) -> Result<HbarSeries> {
    check_dims(q, c)?;
    let ring = Ring::empty();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        if m == 0 {
            let unit = if connected_only { 0 } else { 1 };
            coeffs.push(LaurentPolynomial::constant(&ring, Scalar::from_int(unit)));
            continue;
        }
        // the weight depends only on the isomorphism class since C is symmetric
        let classes: Vec<_> = graph_classes(m)
            .into_iter()
            .filter(|cl| !connected_only || cl.connected)
            .collect();
        let weights: Vec<Scalar> = classes
            .par_iter()
            .map(|cl| pairing_weight(&cl.representative, q, c) * Scalar::from_int(cl.pairings as i64))
            .collect();
        let total: Scalar = weights.into_iter().sum();
        let value = total / factorial(m);
        coeffs.push(LaurentPolynomial::constant(&ring, value));
    }
    Ok(HbarSeries::from_coefficients(&ring, coeffs, order))
}

/// `Z = sum_m hbar^m (1/m!) sum_pairings weight`, through `hbar^order`.
pub fn scalar_model_series(q: &QuadraticForm, c: &CubicForm, order: usize) -> Result<HbarSeries> {
    graph_sum(q, c, order, false)
}

/// The same sum restricted to connected pairings; equals `log Z`.
pub fn connected_scalar_series(q: &QuadraticForm, c: &CubicForm, order: usize) -> Result<HbarSeries> {
    graph_sum(q, c, order, true)
}
