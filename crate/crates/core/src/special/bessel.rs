//! Modified Bessel function of the second kind, `K_ν(x)`, for real order.
//!
//! Temme's series for `x ≤ 2`, Steed's continued fraction otherwise, both
//! for a reduced order `|μ| ≤ 1/2`, followed by upward recurrence.

use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

// Taylor coefficients of 1/Γ(z) about 0: 1/Γ(z) = Σ_{k≥1} c_k z^k.
const RGAMMA_TAYLOR: [f64; 28] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
    1.186_692_254_751_600_332_6e-18,
    1.412_380_655_318_031_781_6e-18,
];

/// `(Γ1, Γ2, 1/Γ(1+μ), 1/Γ(1-μ))` for Temme's method, `|μ| ≤ 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    // gam2 = Σ c_{2j+1} μ^{2j}, gam1 = -Σ c_{2j+2} μ^{2j}
    for j in (0..RGAMMA_TAYLOR.len() / 2).rev() {
        gam2 = gam2 * mu2 + RGAMMA_TAYLOR[2 * j];
        gam1 = gam1 * mu2 - RGAMMA_TAYLOR[2 * j + 1];
    }
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// `e^x K_μ(x)` and `e^x K_{μ+1}(x)` for `|μ| ≤ 1/2`.
fn scaled_pair(mu: f64, x: f64) -> (f64, f64) {
    if x <= 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu * mu);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        let scale = x.exp();
        (sum * scale, sum1 * (2.0 / x) * scale)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAX_ITER {
            a -= 2.0 * (i as f64 - 1.0);
            c = -a * c / i as f64;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= (b * d - 1.0);
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        (kmu, kmu * (mu + x + 0.5 - h) / x)
    }
}

/// Exponentially scaled `e^x K_ν(x)`; finite for every `x > 0`.
pub fn bessel_k_scaled(order: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("bessel_k requires a finite x > 0"));
    }
    if !order.is_finite() {
        return Err(Error::Domain("bessel_k requires a finite order"));
    }
    let nu = order.abs();
    let steps = (nu + 0.5).floor();
    let mu = nu - steps;
    let (mut k, mut k1) = scaled_pair(mu, x);
    let two_over_x = 2.0 / x;
    for i in 1..=(steps as usize) {
        let next = (mu + i as f64) * two_over_x * k1 + k;
        k = k1;
        k1 = next;
    }
    Ok(k)
}

/// `K_ν(x)` for real order; underflows to zero for very large `x`.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    let scaled = bessel_k_scaled(order, x)?;
    Ok(if x > 745.0 { 0.0 } else { scaled * (-x).exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_doubling, Tolerance};

    // Reference values from a 30-digit multiprecision evaluation.
    const REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 1e-06, 13.931442073626419),
        (0.0, 0.1, 2.4270690247020166),
        (0.0, 1.0, 0.42102443824070833),
        (0.0, 2.0, 0.11389387274953344),
        (0.0, 2.5, 0.062347553200366186),
        (0.0, 10.0, 1.7780062316167652e-5),
        (0.0, 300.0, 3.7236948548891433e-132),
        (0.0, 700.0, 4.6697764316853769e-306),
        (0.5, 1e-06, 1253.3128840019896),
        (0.5, 1.0, 0.46106850444789456),
        (0.5, 2.5, 0.065065943154009989),
        (1.0, 1e-06, 999999.99999278432),
        (1.0, 0.1, 9.8538447808706056),
        (1.0, 1.0, 0.60190723019723457),
        (1.0, 2.0, 0.13986588181652243),
        (1.0, 2.5, 0.073890816347747064),
        (1.0, 50.0, 3.4441022267175556e-23),
        (1.0, 700.0, 4.6731107967079661e-306),
        (1.3, 0.1, 21.895838863587255),
        (1.3, 2.5, 0.08297332088868557),
        (2.7, 1e-06, 79541020697249920.0),
        (2.7, 1.0, 4.374241826191164),
        (2.7, 10.0, 2.5138298286300635e-5),
        (5.0, 0.1, 38376009.995835918),
        (5.0, 2.0, 9.4310491005964674),
        (5.0, 300.0, 3.8818542256471539e-132),
    ];

    #[test]
    fn matches_multiprecision_reference() {
        for &(nu, x, want) in REFERENCE {
            let got = bessel_k(nu, x).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-10,
                "K_{nu}({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn half_order_closed_form() {
        let got = bessel_k(0.5, 1.0).unwrap();
        let want = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((got - want).abs() < 1e-14);
        assert!((got - 0.461068).abs() < 1e-6);
    }

    #[test]
    fn k1_small_argument_asymptote() {
        for &x in &[1e-3, 1e-6, 1e-9] {
            let v = x * bessel_k(1.0, x).unwrap();
            assert!((v - 1.0).abs() < 1e-5, "{x}: {v}");
        }
    }

    #[test]
    fn k0_at_two_matches_integral_representation() {
        // K_0(x) = ∫_0^∞ exp(-x cosh t) dt
        let oracle = integrate_doubling(
            |t: f64| (-2.0 * t.cosh()).exp(),
            0.0,
            1.0,
            1e-15,
            Tolerance::new(1e-17, 1e-14),
            20,
        )
        .unwrap()
        .value;
        let got = bessel_k(0.0, 2.0).unwrap();
        assert!(((got - oracle) / oracle).abs() < 1e-12);
        assert!((got - 0.113894).abs() < 1e-6);
    }

    #[test]
    fn recurrence_holds() {
        for &v in &[0.3, 1.0, 1.5, 2.2] {
            for &x in &[0.05, 0.9, 2.0, 3.3, 40.0] {
                let lhs = bessel_k(v + 1.0, x).unwrap();
                let rhs = bessel_k(v - 1.0, x).unwrap() + 2.0 * v / x * bessel_k(v, x).unwrap();
                assert!(((lhs - rhs) / lhs).abs() < 1e-9, "v={v} x={x}");
            }
        }
    }

    #[test]
    fn underflow_and_domain() {
        assert_eq!(bessel_k(1.0, 800.0).unwrap(), 0.0);
        assert!(bessel_k(1.0, 800.0).is_ok());
        assert!(matches!(bessel_k(0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(0.0, -1.0), Err(Error::Domain(_))));
    }
}
