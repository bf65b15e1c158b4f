#![allow(dead_code)]

use kch_core::feynman::{CubicForm, QuadraticForm};
use kch_core::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `|a| <= 4`, `1 <= b <= 3`.
pub fn small_rational(r: &mut impl Rng) -> Scalar {
    Scalar::ratio(r.gen_range(-4..=4), r.gen_range(1..=3))
}

pub fn nonzero_rational(r: &mut impl Rng) -> Scalar {
    loop {
        let s = small_rational(r);
        if s != Scalar::from_int(0) {
            return s;
        }
    }
}

/// A random invertible symmetric quadratic form and symmetric cubic form.
pub fn random_forms(r: &mut impl Rng, n: usize) -> (QuadraticForm, CubicForm) {
    let q = loop {
        let mut m = vec![vec![Scalar::from_int(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = small_rational(r);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        if let Ok(q) = QuadraticForm::new(m) {
            break q;
        }
    };
    let mut table = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                table.insert((i, j, k), small_rational(r));
            }
        }
    }
    let c = CubicForm::from_fn(n, |i, j, k| table[&(i, j, k)].clone());
    (q, c)
}
