mod common;

use common::{arb_div, arb_raw, random_family, rng};
use num_complex::Complex64;
use proptest::prelude::*;
use symdiv::opalg::RawOp;
use symdiv::pseudiff::{rho_l2_norm, self_adjoint_certificate, sigma_upper, SymbolEvaluator};
use symdiv::structure::{power_div_coeffs, power_raw_coeffs};

/// Evaluator for `op + c` with `c` chosen so that `Re σ + c = 1 + |Re σ|` at `(x, ξ)`.
fn shifted(op: &RawOp, x: f64, xi: f64) -> SymbolEvaluator {
    let re = SymbolEvaluator::new(op, 0.0, None).unwrap().sigma_derivative(0, x, xi).re;
    SymbolEvaluator::new(op, re.abs() - re + 1.0, None).unwrap()
}

fn gamma_at(ev: &SymbolEvaluator, x: f64, xi: f64, mu: f64) -> Complex64 {
    (ev.sigma_derivative(0, x, xi) + Complex64::new(0.0, mu)).inv()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_recursion_matches_finite_differences(
        op in arb_raw(4, 2),
        x in -2.0f64..2.0,
        xi in -2.0f64..2.0,
        mu in 0.0f64..5.0,
    ) {
        let ev = shifted(&op, x, xi);
        let g = ev.gamma_derivatives(x, xi, mu, 2).unwrap();
        let h = 1e-4;
        let (gp, g0, gm) = (gamma_at(&ev, x + h, xi, mu), gamma_at(&ev, x, xi, mu), gamma_at(&ev, x - h, xi, mu));
        let d1 = (gp - gm) / (2.0 * h);
        let d2 = (gp - g0 * 2.0 + gm) / (h * h);
        let scale = 1.0 + g[1].norm() + g[2].norm();
        prop_assert!((g[0] - g0).norm() <= 1e-12);
        prop_assert!((g[1] - d1).norm() <= 1e-5 * scale, "{} vs {}", g[1], d1);
        prop_assert!((g[2] - d2).norm() <= 1e-3 * scale, "{} vs {}", g[2], d2);
    }

    #[test]
    fn remainder_matches_applied_operator(
        op in arb_raw(2, 2),
        x in -2.0f64..2.0,
        xi in -2.0f64..2.0,
        mu in 0.0f64..5.0,
    ) {
        let ev = shifted(&op, x, xi);
        let c = ev.sigma_derivative(0, x, xi).re - SymbolEvaluator::new(&op, 0.0, None).unwrap().sigma_derivative(0, x, xi).re;
        let u = |t: f64| Complex64::new(0.0, t * xi).exp() * gamma_at(&ev, t, xi, mu);
        let h = 1e-3;
        let (up, u0, um) = (u(x + h), u(x), u(x - h));
        let derivs = [u0, (up - um) / (2.0 * h), (up - u0 * 2.0 + um) / (h * h)];
        let coeffs: Vec<f64> = (0..3)
            .map(|k| op.coeff(k).eval_f64(&[(symdiv::poly::Var::X, x)]).unwrap())
            .collect();
        let applied: Complex64 = coeffs.iter().zip(derivs.iter()).map(|(a, d)| d * *a).sum::<Complex64>()
            + u0 * Complex64::new(c, mu);
        let via_fd = applied * Complex64::new(0.0, -x * xi).exp() - 1.0;
        let rho = ev.rho_mu(x, xi, mu).unwrap();
        let scale = 1.0 + coeffs.iter().map(|a| a.abs()).sum::<f64>() * (1.0 + derivs.iter().map(|d| d.norm()).sum::<f64>());
        prop_assert!((rho - via_fd).norm() <= 1e-4 * scale, "{rho} vs {via_fd}");
    }

    #[test]
    fn power_symbols_split_into_upper_symbol_and_lower_terms(d in arb_div(2, 2), n in 1u32..=3) {
        prop_assert!(sigma_upper(&power_div_coeffs(&d, n)).is_ok());
    }

    #[test]
    fn automatic_shift_makes_the_symbol_positive(seed in any::<u64>(), n in 1u32..=2) {
        let fam = random_family(&mut rng(seed), 0);
        let cert = self_adjoint_certificate(&fam, n, None, &[], Some(0.5), None).unwrap();
        let ev = SymbolEvaluator::from_power(&power_raw_coeffs(&fam, n), cert.c, Some(0.5)).unwrap();
        prop_assert!(ev.min_re_sigma(16.0, 129) >= 1.0 - 1e-12 * cert.c.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn quadrature_refinement_is_stable(seed in any::<u64>(), mu in prop::sample::select(vec![0.0f64, 10.0])) {
        let fam = random_family(&mut rng(seed), 0);
        let cert = self_adjoint_certificate(&fam, 1, None, &[], Some(0.5), None).unwrap();
        let ev = SymbolEvaluator::from_power(&power_raw_coeffs(&fam, 1), cert.c, Some(0.5)).unwrap();
        let coarse = rho_l2_norm(&ev, mu, Some(8.0), Some(513)).unwrap();
        let fine = rho_l2_norm(&ev, mu, Some(8.0), Some(1025)).unwrap();
        prop_assert!((coarse.interior - fine.interior).abs() <= 0.01 * fine.interior + 1e-12,
            "{} vs {}", coarse.interior, fine.interior);
    }
}
