use proptest::prelude::*;
use zetascope::euler_maclaurin::{zeta_hat_reference, zeta_hat_reference_at, EulerMaclaurinConfig};
use zetascope::functional::{
    h_hat_exact, small_g_2n, small_g_2n_averaged, small_h_2n, small_h_2n_from_hats,
};
use zetascope::series::{
    xi_partial, zeta_hat_partial, zeta_hat_partial_derivative, zeta_partial,
    zeta_partial_derivative,
};
use zetascope::special::{complex_pow_base_real, log_gamma, log_sin_pi};
use zetascope::ComplexValue;

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn log_distance(a: ComplexValue, b: ComplexValue) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let d = a - b;
    c(d.re, d.im - tau * (d.im / tau).round()).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn log_gamma_recurrence(re in 0.05f64..40.0, im in -60.0f64..60.0) {
        let z = c(re, im);
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn log_gamma_reflection(re in -3.0f64..4.0, im in 0.01f64..50.0, flip in any::<bool>()) {
        let z = c(re, if flip { -im } else { im });
        let lhs = log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap();
        let rhs = std::f64::consts::PI.ln() - log_sin_pi(z).unwrap();
        prop_assert!(log_distance(lhs, rhs) <= 1e-11 * (1.0 + rhs.norm()));
    }

    #[test]
    fn log_gamma_conjugate_symmetry(re in -5.0f64..30.0, im in 0.01f64..60.0) {
        let z = c(re, im);
        prop_assert_eq!(log_gamma(z.conj()).unwrap(), log_gamma(z).unwrap().conj());
    }

    #[test]
    fn power_modulus(k in 1.0f64..1e7, re in -3.0f64..3.0, im in -100.0f64..100.0) {
        let v = complex_pow_base_real(k, c(re, im)).unwrap();
        let want = k.powf(-re);
        prop_assert!((v.norm() - want).abs() <= 1e-13 * want);
    }

    #[test]
    fn partial_sums_conjugate(re in -1.0f64..2.0, im in -50.0f64..50.0, n in 1u64..400) {
        let z = c(re, im);
        prop_assume!((z - 1.0).norm() > 1e-6);
        prop_assert_eq!(zeta_partial(z.conj(), n).unwrap(), zeta_partial(z, n).unwrap().conj());
        prop_assert_eq!(xi_partial(z.conj(), n).unwrap(), xi_partial(z, n).unwrap().conj());
    }

    #[test]
    fn splitting_identities(re in 0.05f64..0.95, im in -50.0f64..50.0, n in 1u64..2000) {
        let z = c(re, im);
        let scale = zeta_partial(c(re, 0.0), 2 * n).unwrap().norm()
            + (2.0 * n as f64).powf(1.0 - re) / (1.0 - z).norm();
        let h = small_h_2n(z, n).unwrap();
        let h_hats = small_h_2n_from_hats(z, n).unwrap();
        prop_assert!((h - h_hats).norm() <= 1e-12 * scale, "{} vs {}", h, h_hats);
        let g = small_g_2n(z, n).unwrap();
        let g_avg = small_g_2n_averaged(z, n).unwrap();
        prop_assert!((g - g_avg).norm() <= 1e-12 * scale, "{} vs {}", g, g_avg);
    }

    #[test]
    fn derivatives_match_finite_differences(re in 0.05f64..1.5, im in -40.0f64..40.0, n in 2u64..500) {
        let z = c(re, im);
        prop_assume!((z - 1.0).norm() > 0.05);
        let h = 1e-5;
        let fd = |f: &dyn Fn(ComplexValue) -> ComplexValue| (f(z + h) - f(z - h)) / (2.0 * h);
        let d = zeta_partial_derivative(z, n).unwrap();
        let d_fd = fd(&|w| zeta_partial(w, n).unwrap());
        prop_assert!((d - d_fd).norm() <= 1e-6 * (1.0 + d.norm()), "{} vs {}", d, d_fd);
        let dh = zeta_hat_partial_derivative(z, n).unwrap();
        let dh_fd = fd(&|w| zeta_hat_partial(w, n).unwrap());
        prop_assert!((dh - dh_fd).norm() <= 1e-6 * (1.0 + dh.norm()), "{} vs {}", dh, dh_fd);
    }

    #[test]
    fn reference_independent_of_n(re in 0.05f64..3.0, im in -50.0f64..50.0, extra in 1u64..6) {
        let z = c(re, im);
        prop_assume!((z - 1.0).norm() > 0.1);
        let cfg = EulerMaclaurinConfig::default();
        let n = cfg.reference_n(z);
        let a = zeta_hat_reference_at(z, n, &cfg).unwrap();
        let b = zeta_hat_reference_at(z, n * (1 + extra), &cfg).unwrap();
        let scale = 1.0 + (n as f64).powf(1.0 - re) * (1.0 + (z.norm() / (1.0 - z).norm()));
        prop_assert!((a.value - b.value).norm() <= 1e-12 * scale, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn functional_equation_residual(re in 0.1f64..0.9, im in -50.0f64..50.0) {
        let z = c(re, im);
        let cfg = EulerMaclaurinConfig::default();
        let lhs = zeta_hat_reference(z, &cfg).unwrap();
        prop_assume!(lhs.norm() > 1e-3);
        let rhs = h_hat_exact(z).unwrap() * zeta_hat_reference(1.0 - z, &cfg).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * lhs.norm(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn h_hat_unit_modulus_on_critical_line(t in -100.0f64..100.0) {
        let v = h_hat_exact(c(0.5, t)).unwrap();
        prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
    }
}
