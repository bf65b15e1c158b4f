use kch_core::homfly::{
    complete_homogeneous, inverse_determinant_series, symmetric_trace_series, HolonomySpectrum,
};
use kch_core::mirror::{branch_series, p_series, potential_series, verify_on_curve, QValue};
use kch_core::poly::lp_x_log_derivative;
use kch_core::{LaurentPolynomial, Ring, Scalar};
use proptest::prelude::*;

fn eigenvalue() -> impl Strategy<Value = Scalar> {
    (1i64..=5, 1i64..=3, any::<bool>(), -2i64..=2).prop_map(|(a, b, neg, im)| {
        let re = Scalar::ratio(if neg { -a } else { a }, b);
        &re + &(&Scalar::i() * &Scalar::from_int(im))
    })
}

/// Sum over all multisets of size `k`.
fn h_direct(eigs: &[Scalar], k: usize, start: usize) -> Scalar {
    if k == 0 {
        return Scalar::from_int(1);
    }
    (start..eigs.len())
        .map(|i| &eigs[i] * &h_direct(eigs, k - 1, i))
        .sum()
}

fn torus(s: &str) -> LaurentPolynomial {
    LaurentPolynomial::parse(s, &Ring::torus()).unwrap()
}

proptest! {
    #[test]
    fn newton_matches_monomials(eigs in prop::collection::vec(eigenvalue(), 1..5)) {
        let spec = HolonomySpectrum::new(eigs.clone()).unwrap();
        let h = complete_homogeneous(&spec, 5);
        for k in 0..=5 {
            prop_assert_eq!(&h[k], &h_direct(&eigs, k, 0));
        }
    }

    #[test]
    fn traces_are_the_inverse_determinant(eigs in prop::collection::vec(eigenvalue(), 1..5)) {
        let spec = HolonomySpectrum::new(eigs).unwrap();
        prop_assert_eq!(symmetric_trace_series(&spec, 10), inverse_determinant_series(&spec, 10));
    }

    /// `P (1 - Q X) = 1 - X` for numeric `Q`.
    #[test]
    fn unknot_closed_form(qn in -6i64..=6, qd in 1i64..=3) {
        let q = Scalar::ratio(qn, qd);
        let a = torus("1 - X - P + Q*X*P");
        let b = branch_series(&a, QValue::Numeric(q.clone()), &Scalar::from_int(1), 8).unwrap();
        let s = b.series();
        let ring = s.ring().clone();
        let factor = LaurentPolynomial::from_terms(&ring, [(vec![], Scalar::from_int(1))]);
        let one_minus_qx = kch_core::FormalSeries::new(
            "X",
            &ring,
            vec![factor.clone(), factor.scale(&-q)],
            8,
        )
        .unwrap();
        let lhs = s.checked_mul(&one_minus_qx).unwrap();
        let rhs = kch_core::FormalSeries::new("X", &ring, vec![factor.clone(), factor.scale(&Scalar::from_int(-1))], 8).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Curves `c (P - 1) + X B(X, P)` have a smooth branch through `P = 1`.
    #[test]
    fn random_curves_verify(
        c in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
        terms in prop::collection::vec((0i64..=2, 0i64..=2, -3i64..=3), 1..5),
        order in 1usize..=8,
    ) {
        let ring = Ring::torus();
        let mut a = torus("P - 1").scale(&Scalar::from_int(c));
        for (i, j, k) in terms {
            a = &a + &LaurentPolynomial::monomial(&ring, vec![0, i + 1, j], Scalar::from_int(k));
        }
        let b = branch_series(&a, QValue::Numeric(Scalar::from_int(2)), &Scalar::from_int(1), order).unwrap();
        let check = verify_on_curve(&a, &b, order).unwrap();
        prop_assert!(check.passed(), "{}: {}", a, check);

        let p = p_series(&b).unwrap();
        prop_assert_eq!(potential_series(&p).x_derivative(), p);
    }

    /// Raising the order only appends coefficients.
    #[test]
    fn order_extension(low in 1usize..6, extra in 1usize..6) {
        let a = torus("1 - X - P + Q*X*P");
        let one = Scalar::from_int(1);
        let short = branch_series(&a, QValue::Symbolic, &one, low).unwrap();
        let long = branch_series(&a, QValue::Symbolic, &one, low + extra).unwrap();
        prop_assert_eq!(long.series().truncate(low), short.series().clone());
    }
}

#[test]
fn potential_round_trip_through_polynomials() {
    let a = torus("1 - X - P + Q*X*P");
    let b = branch_series(&a, QValue::Symbolic, &Scalar::from_int(1), 12).unwrap();
    let p = p_series(&b).unwrap();
    let w = potential_series(&p);
    assert!(w.linear.is_zero());
    let target = Ring::new(&["Q", "X"]).unwrap();
    let w_poly = w.series.to_polynomial(&target).unwrap();
    let p_poly = p.to_polynomial(&target).unwrap();
    assert_eq!(lp_x_log_derivative(&w_poly, "X").unwrap(), p_poly);
}

#[test]
fn unknot_verifies_through_order_twenty() {
    let a = torus("1 - X - P + Q*X*P");
    let b = branch_series(&a, QValue::Symbolic, &Scalar::from_int(1), 20).unwrap();
    let check = verify_on_curve(&a, &b, 20).unwrap();
    assert!(check.passed(), "{check}");
    assert_eq!(check.order, 20);
}

#[test]
fn wrong_curve_reports_first_failing_order() {
    let a = torus("1 - X - P + Q*X*P");
    let b = branch_series(&a, QValue::Symbolic, &Scalar::from_int(1), 6).unwrap();
    let other = torus("1 - X - P + Q*X*P + X^3*P");
    let check = verify_on_curve(&other, &b, 6).unwrap();
    assert_eq!(check.first_failure, Some(3));
}

#[test]
fn branch_errors() {
    let a = torus("1 - X - P + Q*X*P");
    assert!(branch_series(&a, QValue::Symbolic, &Scalar::from_int(2), 4).is_err());
    // (P - 1)^2 - X has a branch point at (0, 1)
    let cusp = torus("P^2 - 2*P + 1 - X");
    assert!(branch_series(&cusp, QValue::Numeric(Scalar::from_int(1)), &Scalar::from_int(1), 4).is_err());
}
