use std::f64::consts::PI;

use dastc_core::quadrature::{integrate_doubling, Tolerance};
use dastc_core::special::gamma::gamma;
use dastc_core::special::{bessel_k, fox_h, gauss_2f1, meijer_g, FoxHSpec};
use proptest::prelude::*;

fn g(m: usize, n: usize, a: &[f64], b: &[f64], z: f64) -> f64 {
    meijer_g(&FoxHSpec::meijer(m, n, a, b).unwrap(), z).unwrap()
}

/// `K_ν(x) = ∫₀^∞ e^{-x cosh t} cosh(νt) dt`.
fn bessel_k_by_integral(nu: f64, x: f64) -> f64 {
    let tol = Tolerance::new(0.0, 1e-13).with_l1_rel(1e-15);
    integrate_doubling(
        |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh(),
        0.0,
        1.0,
        1e-15,
        tol,
        20,
    )
    .unwrap()
    .value
}

#[test]
fn log_ratio_as_meijer_g() {
    for z in [0.1f64, 0.5, 2.0, 5.0, 20.0] {
        let want = z.ln() / (1.0 + z);
        let got = -PI * g(2, 2, &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.5], z);
        assert!((got - want).abs() < 1e-8, "z={z}: {got} vs {want}");
    }
}

#[test]
fn scaled_bessel_as_meijer_g() {
    for v in [0.0, 1.0] {
        for x in [0.1f64, 0.7, 1.5, 3.0, 8.0] {
            let want = (-x).exp() * bessel_k_by_integral(v, x);
            let got = PI.sqrt() * g(2, 0, &[0.5], &[v, -v], 2.0 * x);
            assert!((got - want).abs() < 1e-8, "v={v} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn scaled_bessel_identity_value_at_seven_tenths() {
    let v = PI.sqrt() * g(2, 0, &[0.5], &[1.0, -1.0], 1.4);
    assert!((v - 0.521555368450481).abs() < 1e-10);
}

#[test]
fn log1p_as_meijer_g() {
    for x in [0.05f64, 0.5, 1.0, 4.0, 30.0] {
        let got = g(1, 2, &[1.0, 1.0], &[1.0, 0.0], x);
        assert!((got - x.ln_1p()).abs() < 1e-8, "x={x}");
    }
}

/// `(1+x)^{-a} 2F1(a, b; c; x/(1+x))
///   = Γ(c)/(Γ(a)Γ(c-b)) G^{1,2}_{2,2}(x | 1-a, 1-c+b; 0, 1-c)`.
#[test]
fn hypergeometric_power_as_meijer_g() {
    for n in [0.0, 1.0] {
        let (a, b, c) = (3.0 + n, n + 0.5, 3.5);
        let scale = gamma(c) / (gamma(a) * gamma(c - b));
        for x in [0.2f64, 0.5, 1.0, 3.0, 10.0] {
            let want = (1.0 + x).powf(-a) * gauss_2f1(a, b, c, x / (1.0 + x)).unwrap();
            let got = scale * g(1, 2, &[1.0 - a, 1.0 - c + b], &[0.0, 1.0 - c], x);
            assert!(
                (got - want).abs() < 1e-8 * want.abs().max(1.0),
                "n={n} x={x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn unit_coefficient_fox_h_is_meijer_g() {
    let cases: [(usize, usize, &[f64], &[f64]); 3] = [
        (2, 2, &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.5]),
        (2, 0, &[0.5], &[1.0, -1.0]),
        (3, 3, &[0.0, 1.0, 1.0, 2.5], &[2.0, 2.0, 1.0, 0.0]),
    ];
    for (m, n, a, b) in cases {
        let upper = a.iter().map(|&x| (x, 1.0)).collect();
        let lower = b.iter().map(|&x| (x, 1.0)).collect();
        let h = FoxHSpec::new(m, n, upper, lower).unwrap();
        assert!(h.is_meijer());
        for z in [0.3, 1.7, 6.0] {
            let gv = g(m, n, a, b, z);
            let hv = fox_h(&h, z).unwrap();
            assert!((gv - hv).abs() < 1e-8, "{m},{n} z={z}");
        }
    }
}

#[test]
fn uniform_coefficient_scaling() {
    // H(z | (a, k), (b, k)) = G(z^{1/k} | a; b) / k
    let k = 2.0;
    let h = FoxHSpec::new(1, 2, vec![(1.0, k), (1.0, k)], vec![(1.0, k), (0.0, k)]).unwrap();
    for z in [0.3f64, 1.0, 4.0] {
        let want = z.sqrt().ln_1p() / k;
        assert!((fox_h(&h, z).unwrap() - want).abs() < 1e-8);
    }
}

#[test]
fn bessel_matches_integral_representation() {
    for nu in [0.0, 0.5, 1.0, 2.0, 3.5] {
        for x in [0.05, 0.9, 2.0, 7.5, 30.0] {
            let want = bessel_k_by_integral(nu, x);
            let got = bessel_k(nu, x).unwrap();
            assert!((got - want).abs() <= 1e-10 * want, "nu={nu} x={x}");
        }
    }
}

#[test]
fn hypergeometric_elementary_cases() {
    // 2F1(1, 1; 2; z) = -ln(1-z)/z
    for z in [-3.0f64, -0.7, 0.3, 0.8, 0.99] {
        let want = -(-z).ln_1p() / z;
        assert!((gauss_2f1(1.0, 1.0, 2.0, z).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0));
    }
    // 2F1(a, b; b; z) = (1-z)^{-a}
    let v = gauss_2f1(1.5, 3.5, 3.5, 0.3).unwrap();
    assert!((v - 0.7f64.powf(-1.5)).abs() < 1e-12);
    assert!((v - 1.707469).abs() < 1e-6);
}

proptest! {
    #[test]
    fn bessel_recurrence(nu in 0.0f64..4.0, x in 0.05f64..40.0) {
        let km = bessel_k(nu, x).unwrap();
        let k = bessel_k(nu + 1.0, x).unwrap();
        let kp = bessel_k(nu + 2.0, x).unwrap();
        let rhs = km + 2.0 * (nu + 1.0) / x * k;
        prop_assert!((kp - rhs).abs() <= 1e-9 * kp);
    }

    #[test]
    fn bessel_is_positive_and_decreasing(nu in 0.0f64..3.0, x in 0.01f64..50.0) {
        let a = bessel_k(nu, x).unwrap();
        let b = bessel_k(nu, x * 1.1).unwrap();
        prop_assert!(a > 0.0 && b < a);
    }

    #[test]
    fn hypergeometric_is_symmetric_in_numerators(
        a in 0.1f64..5.0, b in 0.1f64..5.0, c in 0.6f64..6.0, z in -5.0f64..0.95,
    ) {
        let f = gauss_2f1(a, b, c, z).unwrap();
        let g = gauss_2f1(b, a, c, z).unwrap();
        prop_assert!((f - g).abs() <= 1e-9 * f.abs().max(1.0));
    }

    #[test]
    fn hypergeometric_euler_transformation(
        a in 0.1f64..4.0, b in 0.1f64..4.0, c in 0.6f64..6.0, z in -0.9f64..0.9,
    ) {
        // F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z)
        let f = gauss_2f1(a, b, c, z).unwrap();
        let g = (1.0 - z).powf(c - a - b) * gauss_2f1(c - a, c - b, c, z).unwrap();
        prop_assert!((f - g).abs() <= 1e-8 * f.abs().max(1.0));
    }
}
