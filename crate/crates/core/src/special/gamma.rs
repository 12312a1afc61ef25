//! Gamma-family helpers: complex log-gamma for contour integrands, plus
//! real reciprocal gamma and digamma for the hypergeometric connection
//! formulas.

use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// `ln Γ(z)` for complex `z` away from the poles.
///
/// The imaginary part is only defined modulo `2π`; callers exponentiate
/// sums of these values, so the branch never matters.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let ln_pi = Complex64::new(PI.ln(), 0.0);
        return ln_pi - ln_sin_pi(z) - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_2PI + acc.ln()
}

/// `ln sin(πz)`, evaluated without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    let w = z * PI;
    if z.im < 1.0 {
        return w.sin().ln();
    }
    // sin w = e^{-iw} (e^{2iw} - 1) / (2i), with |e^{2iw}| < e^{-2π}
    let i = Complex64::new(0.0, 1.0);
    let small = (i * 2.0 * w).exp();
    -i * w + (small - 1.0).ln() - Complex64::new(2.0f64.ln(), PI / 2.0)
}

/// `Γ(x)` for real `x`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}

/// True for `0, -1, -2, ...`.
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `1/Γ(x)`, exactly zero at the poles of `Γ`.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.0 && x < 170.0 {
        return 1.0 / libm::tgamma(x);
    }
    let (lg, sign) = ln_gamma_signed(x);
    sign * (-lg).exp()
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)`; infinite at the poles.
pub fn digamma(mut x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    let mut acc = 0.0;
    if x < 0.5 {
        // ψ(1 - x) - ψ(x) = π cot(πx)
        acc -= PI / (PI * x).tan();
        x = 1.0 - x;
    }
    while x < 15.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli-number asymptotic tail.
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + x.ln() - 0.5 / x - tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_ln_gamma_matches_real_gamma_on_axis() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 40.0] {
            let z = ln_gamma_complex(Complex64::new(x, 0.0));
            assert!((z.re - libm::lgamma(x)).abs() < 1e-13, "{x}");
        }
        // Γ(-1.5) = 4√π/3
        let z = ln_gamma_complex(Complex64::new(-1.5, 0.0)).exp();
        assert!((z.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
    }

    #[test]
    fn complex_ln_gamma_obeys_modulus_identity() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for &y in &[0.5, 3.0, 25.0, 120.0] {
            let z = ln_gamma_complex(Complex64::new(0.5, y));
            let want = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((z.re - want).abs() < 1e-12 * want.abs().max(1.0), "{y}");
            // reflection branch
            let w = ln_gamma_complex(Complex64::new(-2.5, y)).exp();
            let direct = ln_gamma_complex(Complex64::new(0.5, y)).exp()
                / (Complex64::new(-2.5, y) * Complex64::new(-1.5, y) * Complex64::new(-0.5, y));
            assert!(((w - direct) / direct).norm() < 1e-11, "{y}");
        }
    }

    #[test]
    fn digamma_reference_points() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + euler).abs() < 1e-14);
        assert!((digamma(0.5) + euler + 2.0 * 2.0f64.ln()).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x
        for &x in &[-2.3, 0.01, 3.7, 55.0] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-12);
        }
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-4.0), 0.0);
        assert!((rgamma(5.0) - 1.0 / 24.0).abs() < 1e-16);
        assert!(rgamma(175.0) > 0.0);
        assert_eq!(rgamma(400.0), 0.0);
    }
}
