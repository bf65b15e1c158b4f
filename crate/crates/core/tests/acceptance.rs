//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use kch_core::augment::augmentation_polynomial;
use kch_core::dga::Dga;
use kch_core::feynman::{
    connected_scalar_series, enumerate_pairings, graph_classes, matrix_model_series,
    ribbon_faces, scalar_model_series, stein_oracle_series, wick_oracle, CubicForm, Pairing,
    QuadraticForm, RibbonGraph,
};
use kch_core::groebner::GroebnerLimits;
use kch_core::homfly::{
    self, complete_homogeneous, homfly_with, inverse_determinant_series, symmetric_trace_series,
    wilson_loop, HolonomySpectrum, HomflyOptions, LinkDiagram, ResolutionStrategy,
};
use kch_core::mirror::{branch_series, p_series, potential_series, verify_on_curve, QValue};
use kch_core::{LaurentPolynomial, Ring, Scalar};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

fn torus(s: &str) -> LaurentPolynomial {
    LaurentPolynomial::parse(s, &Ring::torus()).unwrap()
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn unknot_dga() -> Dga {
    let text = include_str!("../data/unknot.dga.json");
    Dga::load(text).unwrap()
}

fn unknot_a() -> LaurentPolynomial {
    augmentation_polynomial(&unknot_dga(), GroebnerLimits::default())
        .unwrap()
        .polynomial
        .expect("principal")
}

fn c1_unknot_dga() -> Check {
    let d = unknot_dga();
    ensure!(d.check_d_squared().passed(), "d^2 != 0");
    let c = d.generator_index("c").unwrap();
    let dc = d.format(d.differential_of(c));
    ensure!(dc == "1 - X - P + Q*X*P", "dc prints as `{dc}`");
    Ok(())
}

fn c2_augmentation_polynomial() -> Check {
    let r = augmentation_polynomial(&unknot_dga(), GroebnerLimits::default()).unwrap();
    ensure!(r.principal, "not principal: {:?}", r.generators);
    let a = r.polynomial.unwrap();
    ensure!(a == torus("1 - X - P + Q*X*P"), "got {a}");
    Ok(())
}

fn c3_specialization() -> Check {
    let a = unknot_a();
    let at_q1 = a.substitute("Q", &int(1)).unwrap();
    let product = &torus("1 - X") * &torus("1 - P");
    ensure!(at_q1 == product, "A(Q=1) = {at_q1}, (1-X)(1-P) = {product}");
    let p_line = at_q1.substitute("P", &int(1)).unwrap();
    ensure!(p_line.is_zero(), "A(X,1,1) = {p_line}");
    let x_line = at_q1.substitute("X", &int(1)).unwrap();
    ensure!(x_line.is_zero(), "A(1,P,1) = {x_line}");
    Ok(())
}

fn c4_synthetic_elimination() -> Check {
    let d = Dga::load(include_str!("../data/elim_synthetic.dga.json")).unwrap();
    let r = augmentation_polynomial(&d, GroebnerLimits::default()).unwrap();
    // hand substitution u = P into u^2 - X
    let expected = &torus("P").pow(2) - &torus("X");
    ensure!(r.principal && r.polynomial.as_ref() == Some(&expected), "got {:?}", r.generators);
    Ok(())
}

fn unit_forms() -> (QuadraticForm, CubicForm) {
    (
        QuadraticForm::parse_json("[[1]]").unwrap(),
        CubicForm::parse_json("[[[1]]]").unwrap(),
    )
}

fn c5_scalar_model() -> Check {
    let (q, c) = unit_forms();
    let z = scalar_model_series(&q, &c, 4).unwrap();
    ensure!(z.scalar(1) == Some(int(0)), "hbar^1 = {}", z.coefficient(1));
    ensure!(z.scalar(2) == Some(Scalar::ratio(15, 2)), "hbar^2 = {}", z.coefficient(2));
    let mut r = common::rng(0x5eed);
    for i in 0..20 {
        let n = r.gen_range(1..=3);
        let (q, c) = common::random_forms(&mut r, n);
        let graphs = scalar_model_series(&q, &c, 4).unwrap();
        let oracle = stein_oracle_series(&q, &c, 4).unwrap();
        ensure!(graphs == oracle, "instance {i} (n = {n}): {graphs} vs {oracle}");
    }
    let connected = graph_classes(2).into_iter().filter(|k| k.connected).count();
    ensure!(connected == 2, "{connected} connected classes at order 2");
    Ok(())
}

/// Faces traced by hand: leave along a half-edge, cross to its partner,
/// turn to the next half-edge in the rotation there.
fn traced_faces(p: &Pairing, rotation: &[usize]) -> usize {
    let mut seen = vec![false; p.half_edges()];
    let mut faces = 0;
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = rotation[p.partner(h)];
        }
    }
    faces
}

fn c6_graph_bookkeeping() -> Check {
    let mut graphs = 0usize;
    let mut ribbons = 0usize;
    for m in 0..=4 {
        for class in graph_classes(m).iter().filter(|k| k.connected && k.vertices > 0) {
            let v = class.vertices as i64;
            let e = class.edges as i64;
            let r = class.loops as i64;
            ensure!(v == 2 * (r - 1), "v = {v}, r = {r}");
            ensure!(v - e == 1 - r, "v = {v}, e = {e}, r = {r}");
            graphs += 1;
        }
        for p in enumerate_pairings(m).into_iter().filter(|p| m > 0 && p.is_connected()) {
            let v = p.vertices() as i64;
            let e = p.edges().len() as i64;
            let r = e - v + 1;
            ensure!(p.loops() as i64 == r, "loop count {} vs e - v + 1 = {r}", p.loops());
            for mask in 0u32..(1 << m) {
                let flags: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                let g = RibbonGraph::with_orientations(p.clone(), &flags);
                let h = traced_faces(&p, g.rotation()) as i64;
                let inv = ribbon_faces(&g).map_err(|e| e.to_string())?;
                ensure!(inv.faces as i64 == h, "face count {} vs traced {h}", inv.faces);
                ensure!((1 + r - h) % 2 == 0 && 1 + r - h >= 0, "odd Euler characteristic");
                let g_ = inv.genus as i64;
                ensure!(2 - 2 * g_ - h == 1 - r, "g = {g_}, h = {h}, r = {r}");
                ribbons += 1;
            }
        }
    }
    ensure!(graphs > 0 && ribbons > 0, "nothing enumerated");
    Ok(())
}

fn c7_connected_exponential() -> Check {
    let (q, c) = unit_forms();
    let z = scalar_model_series(&q, &c, 4).unwrap();
    let f = connected_scalar_series(&q, &c, 4).unwrap();
    let e = f.connected_exp().unwrap();
    ensure!(e == z, "exp(F) = {e}, Z = {z}");
    let z2 = z.scalar(2).unwrap();
    let f4 = &z.scalar(4).unwrap() - &(&(&z2 * &z2) * &Scalar::ratio(1, 2));
    ensure!(f.scalar(4) == Some(f4.clone()), "F4 = {}, Z4 - Z2^2/2 = {f4}", f.coefficient(4));
    let mut r = common::rng(7);
    for _ in 0..5 {
        let n = r.gen_range(1..=2);
        let (q, c) = common::random_forms(&mut r, n);
        let z = scalar_model_series(&q, &c, 4).unwrap();
        let f = connected_scalar_series(&q, &c, 4).unwrap();
        ensure!(f.connected_exp().unwrap() == z, "exp(F) != Z for a random instance");
        ensure!(z.connected_log().unwrap() == f, "log Z != F for a random instance");
    }
    Ok(())
}

fn c8_matrix_model() -> Check {
    let series = matrix_model_series(2);
    for m in 0..=2 {
        for n in 1..=3 {
            let at = series.coefficient(m).substitute("N", &int(n)).unwrap();
            let at = at.constant_term();
            let oracle = wick_oracle(n as usize, m);
            ensure!(at == oracle, "order {m}, N = {n}: {at} vs {oracle}");
        }
    }
    ensure!(
        kch_core::feynman::interpolate_oracle(2) == *series.coefficient(2),
        "interpolated oracle differs"
    );
    Ok(())
}

fn c9_homfly() -> Check {
    let ring = homfly::homfly_ring();
    let p = |s: &str| LaurentPolynomial::parse(s, &ring).unwrap();
    let opts = HomflyOptions::default();
    ensure!(homfly_with(&LinkDiagram::unknot(), opts).unwrap() == p("1"), "unknot");
    let delta = p("a*z^-1 - a^-1*z^-1");
    for d in [LinkDiagram::unlink(2), homfly::bundled("unlink2").unwrap()] {
        let v = homfly_with(&d, opts).unwrap();
        ensure!(v == delta, "2-unlink {d}: {v}");
    }
    let trefoil = homfly::bundled("trefoil").unwrap();
    let expected = p("2*a^-2 - a^-4 + a^-2*z^2");
    for strategy in [
        ResolutionStrategy::MinLabel,
        ResolutionStrategy::MaxLabel,
        ResolutionStrategy::Seeded(1),
        ResolutionStrategy::Seeded(2),
    ] {
        let v = homfly_with(&trefoil, HomflyOptions { strategy, ..opts }).unwrap();
        ensure!(v == expected, "trefoil under {strategy:?}: {v}");
    }
    Ok(())
}

fn c10_wilson() -> Check {
    let unknot = LinkDiagram::unknot();
    for n in 1..=4i64 {
        for k in 1..=6i64 {
            let w = wilson_loop(&unknot, n, k).unwrap();
            let half = Complex64::from_polar(1.0, std::f64::consts::PI / (k + n) as f64);
            let expected = (half.powi(n as i32) - half.powi(-(n as i32))) / (half - half.inv());
            ensure!(
                (w.value - expected).norm() < 1e-9,
                "N = {n}, k = {k}: {} vs {expected}",
                w.value
            );
            ensure!(w.routes_agree(1e-9), "float route disagrees at N = {n}, k = {k}");
            if n == 1 {
                ensure!(w.exact == vec![int(1)], "N = 1, k = {k}: {}", w.exact_string());
            }
        }
    }
    Ok(())
}

/// `h_k` as the sum of all degree-`k` monomials.
fn h_direct(eigs: &[Scalar], k: usize) -> Scalar {
    fn go(eigs: &[Scalar], k: usize, start: usize, acc: Scalar, out: &mut Scalar) {
        if k == 0 {
            *out += acc;
            return;
        }
        for i in start..eigs.len() {
            go(eigs, k - 1, i, &acc * &eigs[i], out);
        }
    }
    let mut out = int(0);
    go(eigs, k, 0, int(1), &mut out);
    out
}

fn c11_symmetric_traces() -> Check {
    let mut r = common::rng(11);
    for i in 0..20 {
        let n = r.gen_range(1..=4);
        let eigs: Vec<Scalar> = (0..n)
            .map(|_| {
                let re = common::nonzero_rational(&mut r);
                if r.gen_bool(0.3) {
                    &re + &(&Scalar::i() * &common::small_rational(&mut r))
                } else {
                    re
                }
            })
            .collect();
        let spec = HolonomySpectrum::new(eigs.clone()).unwrap();
        let lhs = symmetric_trace_series(&spec, 10);
        let rhs = inverse_determinant_series(&spec, 10);
        ensure!(lhs == rhs, "spectrum {i}: {lhs} vs {rhs}");
        let h = complete_homogeneous(&spec, 5);
        for (k, hk) in h.iter().enumerate() {
            let direct = h_direct(&eigs, k);
            ensure!(*hk == direct, "spectrum {i}, h_{k}: {hk} vs {direct}");
        }
    }
    Ok(())
}

fn c12_mirror_branch() -> Check {
    let a = unknot_a();
    let b = branch_series(&a, QValue::Symbolic, &int(1), 10).unwrap();
    let qring = Ring::new(&["Q"]).unwrap();
    let q_pow = |k: i64| LaurentPolynomial::monomial(&qring, vec![k], int(1));
    for k in 0..=10usize {
        // (1 - X) sum Q^k X^k
        let expected = if k == 0 {
            q_pow(0)
        } else {
            &q_pow(k as i64) - &q_pow(k as i64 - 1)
        };
        ensure!(*b.series().coeff(k) == expected, "X^{k}: {} vs {expected}", b.series().coeff(k));
    }
    let check = verify_on_curve(&a, &b, 10).unwrap();
    ensure!(check.passed(), "{check}");
    let p = p_series(&b).unwrap();
    let w = potential_series(&p);
    ensure!(w.x_derivative() == p, "dW/dx = {} vs p = {p}", w.x_derivative());
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("1  unknot DGA: d^2 = 0 and dc = 1 - X - P + Q*X*P", c1_unknot_dga),
        ("2  unknot augmentation polynomial", c2_augmentation_polynomial),
        ("3  Q = 1 specialization", c3_specialization),
        ("4  synthetic elimination to P^2 - X", c4_synthetic_elimination),
        ("5  scalar model graph sum vs oracle", c5_scalar_model),
        ("6  graph and ribbon bookkeeping", c6_graph_bookkeeping),
        ("7  connected/disconnected exponential", c7_connected_exponential),
        ("8  matrix model vs Wick oracle", c8_matrix_model),
        ("9  HOMFLY values and strategy independence", c9_homfly),
        ("10 Wilson loop of the unknot", c10_wilson),
        ("11 symmetric traces", c11_symmetric_traces),
        ("12 mirror branch of the unknot", c12_mirror_branch),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS  {name}  ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({ms} ms): {why}");
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of 12 passed in {:.2?}", 12 - failed, total);
    if failed > 0 || total.as_secs() >= 60 {
        std::process::exit(1);
    }
}
