//! Property-based invariants: weight-function structure, the chain rule
//! for weighted derivatives, and symmetry/covariance of the inequality
//! evaluator.

use proptest::prelude::*;

use psifrac::iyengar::{Checker, Variant};
use psifrac::funcs::psi_polynomial;
use psifrac::norms::Regime;
use psifrac::psi::{make_psi, PsiFunction};

fn arb_psi() -> impl Strategy<Value = PsiFunction> {
    prop_oneof![
        Just(make_psi("identity", &[], 0.0, 1.0).unwrap()),
        (0.5f64..3.0).prop_map(|c1| make_psi("affine", &[-1.0, c1], 0.0, 1.0).unwrap()),
        (1.5f64..5.0).prop_map(|b| make_psi("log", &[], 1.0, b).unwrap()),
        (0.5f64..3.0).prop_map(|s| make_psi("power", &[s], 0.5, 2.0).unwrap()),
        Just(make_psi("exp", &[], -0.5, 1.0).unwrap()),
    ]
}

fn arb_coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 2..=5)
}

// independent k-th derivative of sum c_j z^j: differentiate the
// coefficient vector k times, then Horner
fn poly_deriv_indep(coeffs: &[f64], k: usize, z: f64) -> f64 {
    let mut c = coeffs.to_vec();
    for _ in 0..k {
        c = c.iter().enumerate().skip(1).map(|(j, v)| j as f64 * v).collect();
        if c.is_empty() {
            return 0.0;
        }
    }
    c.iter().rev().fold(0.0, |acc, v| acc * z + v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_monotone_and_invertible(psi in arb_psi(), frac in 0.0f64..1.0) {
        let t = psi.a() + frac * (psi.b() - psi.a());
        prop_assert!(psi.deriv(t) > 0.0);
        let back = psi.inverse(psi.eval(t)).unwrap();
        prop_assert!((back - t).abs() <= 1e-12 * t.abs().max(1.0));
    }

    #[test]
    fn chain_identity_for_composed_polynomials(
        psi in arb_psi(),
        coeffs in arb_coeffs(),
        frac in 0.0f64..1.0,
        k in 0usize..5,
    ) {
        let f = psi_polynomial(&psi, &coeffs, psi.a());
        let t = psi.a() + frac * (psi.b() - psi.a());
        let z = psi.eval(t) - psi.psi_a();
        let want = poly_deriv_indep(&coeffs, k, z);
        let got = f.psi_deriv(k, t).unwrap();
        prop_assert!(
            (got - want).abs() <= 1e-10 * want.abs().max(1e-10),
            "k={} t={}: {} vs {}", k, t, got, want
        );
    }
}

proptest! {
    // quadrature-heavy cases: keep the count low
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn check_scales_linearly(
        coeffs in arb_coeffs(),
        lambda in 0.1f64..8.0,
        s_frac in 0.1f64..0.9,
    ) {
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = psi_polynomial(&psi, &coeffs, 0.0);
        let g = f.scaled(lambda);
        let alpha = 0.7;
        let base = Checker::new(&f, &psi, alpha, Regime::Linf).unwrap();
        let scaled = Checker::new(&g, &psi, alpha, Regime::Linf).unwrap();
        let s = s_frac;
        let (l0, r0) = (base.lhs_split(s).unwrap(), base.rhs_split(s).unwrap());
        let (l1, r1) = (scaled.lhs_split(s).unwrap(), scaled.rhs_split(s).unwrap());
        prop_assert!((l1 - lambda * l0).abs() <= 1e-9 * (lambda * l0).abs().max(1e-6));
        prop_assert!((r1 - lambda * r0).abs() <= 1e-9 * (lambda * r0).abs().max(1e-6));
        // pass verdict is scale-invariant
        let p0 = base.report(Variant::Split { s }).unwrap().passed;
        let p1 = scaled.report(Variant::Split { s }).unwrap().passed;
        prop_assert_eq!(p0, p1);
    }

    #[test]
    fn reflection_maps_split_points(
        coeffs in arb_coeffs(),
        s_frac in 0.1f64..0.9,
    ) {
        // under the identity weight, reflecting f about the interval
        // midpoint maps the check at s to the check at a+b-s
        let psi = make_psi("identity", &[], 0.0, 1.0).unwrap();
        let f = psi_polynomial(&psi, &coeffs, 0.0);
        let reflected: Vec<f64> = coeffs.iter().enumerate()
            .map(|(k, c)| if k % 2 == 0 { *c } else { -c })
            .collect();
        let ftilde = psi_polynomial(&psi, &reflected, 1.0); // f(1 - t)
        for (regime, alpha) in [
            (Regime::Linf, 0.6),
            (Regime::LqPsi { p: 2.0, q: 2.0 }, 0.6),
            (Regime::L1Psi, 1.5),
        ] {
            let a_chk = Checker::new(&f, &psi, alpha, regime).unwrap();
            let b_chk = Checker::new(&ftilde, &psi, alpha, regime).unwrap();
            let s = s_frac;
            let l_f = a_chk.lhs_split(s).unwrap();
            let l_r = b_chk.lhs_split(1.0 - s).unwrap();
            prop_assert!((l_f - l_r).abs() <= 1e-8 * l_f.abs().max(1.0), "lhs {} vs {}", l_f, l_r);
            let r_f = a_chk.rhs_split(s).unwrap();
            let r_r = b_chk.rhs_split(1.0 - s).unwrap();
            prop_assert!((r_f - r_r).abs() <= 1e-8 * r_f.abs().max(1.0), "rhs {} vs {}", r_f, r_r);
        }
    }
}
