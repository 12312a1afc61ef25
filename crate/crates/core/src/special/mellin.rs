//! Meijer-G and Fox-H functions by Mellin–Barnes quadrature.
//!
//! Convention (single variable):
//!
//! ```text
//! H^{m,n}_{p,q}(z) = 1/(2πi) ∫_L Θ(s) z^s ds
//! Θ(s) = Π_{j<m} Γ(b_j - B_j s) Π_{j<n} Γ(1 - a_j + A_j s)
//!        / [Π_{j≥m} Γ(1 - b_j + B_j s) Π_{j≥n} Γ(a_j - A_j s)]
//! ```
//!
//! `L` is the vertical line `Re s = c` with every pole of the `b`-group to
//! its right and every pole of the `a`-group to its left. Conjugate
//! symmetry of `Θ` for real parameters reduces the line integral to
//! `(1/π) ∫_0^∞ Re[Θ(c + iy) z^{c+iy}] dy`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::gamma::ln_gamma_complex;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod_21, integrate_doubling, Tolerance};

/// Parameters of `H^{m,n}_{p,q}`: `upper` holds `(a_j, A_j)`, `lower` holds
/// `(b_j, B_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHSpec {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl FoxHSpec {
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        if m > lower.len() || n > upper.len() {
            return Err(Error::Parameter("Fox-H orders require m <= q and n <= p"));
        }
        let all = upper.iter().chain(lower.iter());
        for &(value, coeff) in all {
            if !value.is_finite() || !coeff.is_finite() {
                return Err(Error::Parameter("Fox-H parameters must be finite"));
            }
            if !(coeff > 0.0) {
                return Err(Error::Parameter(
                    "Fox-H coefficients must be strictly positive",
                ));
            }
        }
        Ok(Self { m, n, upper, lower })
    }

    /// `G^{m,n}_{p,q}(· | a; b)` as a Fox-H spec with unit coefficients.
    pub fn meijer(m: usize, n: usize, a: &[f64], b: &[f64]) -> Result<Self> {
        Self::new(
            m,
            n,
            a.iter().map(|&x| (x, 1.0)).collect(),
            b.iter().map(|&x| (x, 1.0)).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    pub fn is_meijer(&self) -> bool {
        self.upper
            .iter()
            .chain(self.lower.iter())
            .all(|&(_, c)| c == 1.0)
    }

    /// Open interval `(left, right)` of admissible abscissae; either end may
    /// be infinite.
    pub fn pole_gap(&self) -> (f64, f64) {
        let left = self.upper[..self.n]
            .iter()
            .map(|&(a, alpha)| (a - 1.0) / alpha)
            .fold(f64::NEG_INFINITY, f64::max);
        let right = self.lower[..self.m]
            .iter()
            .map(|&(b, beta)| b / beta)
            .fold(f64::INFINITY, f64::min);
        (left, right)
    }

    /// Exponential decay rate of `|Θ(c + iy)|` is `π·a*/2`.
    pub fn decay_index(&self) -> f64 {
        let (num_a, den_a) = self.upper.split_at(self.n);
        let (num_b, den_b) = self.lower.split_at(self.m);
        let sum = |v: &[(f64, f64)]| v.iter().map(|p| p.1).sum::<f64>();
        sum(num_a) - sum(den_a) + sum(num_b) - sum(den_b)
    }

    /// `ln Θ(s)`.
    pub fn ln_kernel(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &(b, beta)) in self.lower.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_complex(Complex64::new(b, 0.0) - s * beta);
            } else {
                acc -= ln_gamma_complex(Complex64::new(1.0 - b, 0.0) + s * beta);
            }
        }
        for (j, &(a, alpha)) in self.upper.iter().enumerate() {
            if j < self.n {
                acc += ln_gamma_complex(Complex64::new(1.0 - a, 0.0) + s * alpha);
            } else {
                acc -= ln_gamma_complex(Complex64::new(a, 0.0) - s * alpha);
            }
        }
        acc
    }
}

/// Integration line and quadrature budget for one Mellin–Barnes variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// `Re s` along the vertical line.
    pub abscissa: f64,
    /// Initial (adaptive) or fixed (non-adaptive) truncation height.
    pub height: f64,
    /// Panel budget: the cap on adaptive panels, or the number of equal
    /// panels when `adaptive` is false.
    pub nodes: usize,
    pub adaptive: bool,
}

pub(crate) const MAX_DOUBLINGS: usize = 10;

impl ContourSpec {
    pub fn new(abscissa: f64, height: f64, nodes: usize, adaptive: bool) -> Result<Self> {
        if !abscissa.is_finite() {
            return Err(Error::Parameter("contour abscissa must be finite"));
        }
        if !(height > 0.0) || !height.is_finite() {
            return Err(Error::Parameter("contour height must be positive"));
        }
        if nodes == 0 {
            return Err(Error::Parameter("contour node count must be positive"));
        }
        Ok(Self {
            abscissa,
            height,
            nodes,
            adaptive,
        })
    }

    /// Adaptive contour through the middle of the spec's pole gap.
    pub fn for_spec(spec: &FoxHSpec) -> Result<Self> {
        let (left, right) = spec.pole_gap();
        if !(left < right) {
            return Err(Error::Parameter(
                "no vertical line separates the pole sequences",
            ));
        }
        let abscissa = match (left.is_finite(), right.is_finite()) {
            (true, true) => 0.5 * (left + right),
            (false, true) => right - 0.5,
            (true, false) => left + 0.5,
            (false, false) => 0.0,
        };
        let contour = Self::new(abscissa, initial_height(spec.decay_index()), 2000, true)?;
        contour.check_against(spec)?;
        Ok(contour)
    }

    /// Rejects a line that does not separate the spec's poles.
    pub fn check_against(&self, spec: &FoxHSpec) -> Result<()> {
        let (left, right) = spec.pole_gap();
        if !(left < self.abscissa && self.abscissa < right) {
            return Err(Error::Parameter(
                "contour abscissa does not separate the poles",
            ));
        }
        if !(spec.decay_index() > 0.0) {
            return Err(Error::Parameter(
                "Mellin-Barnes integrand does not decay along the contour",
            ));
        }
        Ok(())
    }
}

pub(crate) fn initial_height(decay_index: f64) -> f64 {
    // |Θ| ~ exp(-π a* |y| / 2); start where it has dropped by ~e^-12.
    (24.0 / (PI * decay_index.max(0.25))).max(2.0)
}

pub(crate) const REL_TOL: f64 = 1e-12;
pub(crate) const L1_TOL: f64 = 1e-15;

/// Integrates `g` over `[0, ∞)` with a contour's settings: adaptive
/// doubling, or a fixed composite rule on `[0, height]`.
/// `abs` is an absolute floor for integrals that cancel to zero.
pub(crate) fn line_integral<F: FnMut(f64) -> f64>(
    mut g: F,
    contour: &ContourSpec,
    rel: f64,
    abs: f64,
) -> Result<f64> {
    if contour.adaptive {
        let tol = Tolerance::new(abs, rel)
            .with_l1_rel(L1_TOL)
            .with_max_panels(contour.nodes);
        integrate_doubling(g, 0.0, contour.height, rel, tol, MAX_DOUBLINGS).map(|r| r.value)
    } else {
        let h = contour.height / contour.nodes as f64;
        Ok((0..contour.nodes)
            .map(|i| gauss_kronrod_21(&mut g, i as f64 * h, (i + 1) as f64 * h).value)
            .sum())
    }
}

/// `H^{m,n}_{p,q}(z)` on an explicit contour.
pub fn fox_h_with(spec: &FoxHSpec, z: f64, contour: &ContourSpec) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(
            "H-function argument must be a finite positive real",
        ));
    }
    contour.check_against(spec)?;
    let ln_z = z.ln();
    let c = contour.abscissa;
    let term = |y: f64| {
        let s = Complex64::new(c, y);
        (spec.ln_kernel(s) + s * ln_z).exp()
    };
    // Modulus scale near the real axis, used as the cancellation floor.
    let scale = [0.25, 0.5, 1.0, 2.0]
        .iter()
        .map(|&y| term(y).norm())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    let abs = L1_TOL * scale * contour.height;
    Ok(line_integral(|y| term(y).re, contour, REL_TOL, abs)? / PI)
}

/// `H^{m,n}_{p,q}(z)` for a positive real argument.
pub fn fox_h(spec: &FoxHSpec, z: f64) -> Result<f64> {
    fox_h_with(spec, z, &ContourSpec::for_spec(spec)?)
}

/// `G^{m,n}_{p,q}(z)`; the spec must carry unit coefficients.
pub fn meijer_g(spec: &FoxHSpec, z: f64) -> Result<f64> {
    if !spec.is_meijer() {
        return Err(Error::Parameter("Meijer-G requires unit coefficients"));
    }
    fox_h(spec, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel::bessel_k;
    use alloc::vec;

    fn g(m: usize, n: usize, a: &[f64], b: &[f64], z: f64) -> f64 {
        meijer_g(&FoxHSpec::meijer(m, n, a, b).unwrap(), z).unwrap()
    }

    #[test]
    fn log_identity_at_unit_argument() {
        let v = g(1, 2, &[1.0, 1.0], &[1.0, 0.0], 1.0);
        assert!((v - 2.0f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn log_ratio_identity_vanishes_at_one() {
        let v = g(2, 2, &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.5], 1.0);
        assert!(v.abs() < 1e-10, "{v}");
    }

    #[test]
    fn bessel_identity_point() {
        // √π G^{2,0}_{1,2}(2x | 1/2; 1, -1) = e^{-x} K_1(x) at x = 0.7
        let x = 0.7;
        let lhs = PI.sqrt() * g(2, 0, &[0.5], &[1.0, -1.0], 2.0 * x);
        let rhs = (-x).exp() * bessel_k(1.0, x).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
        assert!((rhs - 0.521555368450481).abs() < 1e-12);
    }

    #[test]
    fn non_unit_coefficients_match_closed_form() {
        // H^{1,0}_{0,1}(z | (b, B)) = z^{b/B} e^{-z^{1/B}} / B
        for &(b, big_b) in &[(0.0, 0.5), (0.3, 2.0), (1.0, 1.5)] {
            let spec = FoxHSpec::new(1, 0, vec![], vec![(b, big_b)]).unwrap();
            for &z in &[0.3, 1.0, 2.5] {
                let got = fox_h(&spec, z).unwrap();
                let want = z.powf(b / big_b) * (-z.powf(1.0 / big_b)).exp() / big_b;
                assert!(
                    (got - want).abs() < 1e-10 * want.abs().max(1e-3),
                    "{b} {big_b} {z}"
                );
            }
        }
    }

    #[test]
    fn third_order_instance_matches_reference() {
        // Multiprecision G^{3,3}_{4,4}(z | 0,1,1,5/2; 2+n,2-n,1,0).
        let reference = [
            (0.0, 0.5, 0.2923289375880338),
            (0.0, 4.0, 0.98709520472664442),
            (0.0, 90.0, 2.9003880240886092),
            (1.0, 0.5, 0.90945587768200412),
            (1.0, 12.5, 3.8471785904557937),
        ];
        for (n, z, want) in reference {
            let got = g(
                3,
                3,
                &[0.0, 1.0, 1.0, 2.5],
                &[2.0 + n, 2.0 - n, 1.0, 0.0],
                z,
            );
            assert!(((got - want) / want).abs() < 1e-9, "n={n} z={z}: {got}");
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            FoxHSpec::new(1, 0, vec![], vec![(0.0, 0.0)]),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            FoxHSpec::meijer(3, 0, &[], &[0.0, 1.0]),
            Err(Error::Parameter(_))
        ));
        // a-group pole at 0 sits right of the b-group pole at -1.
        let crossed = FoxHSpec::meijer(1, 1, &[1.0], &[-1.0]).unwrap();
        assert!(matches!(fox_h(&crossed, 1.0), Err(Error::Parameter(_))));
        let fox = FoxHSpec::new(1, 0, vec![], vec![(0.0, 2.0)]).unwrap();
        assert!(matches!(meijer_g(&fox, 1.0), Err(Error::Parameter(_))));
        let ok = FoxHSpec::meijer(1, 0, &[], &[0.0]).unwrap();
        assert!(matches!(fox_h(&ok, 0.0), Err(Error::Domain(_))));
        let off = ContourSpec::new(0.5, 10.0, 100, true).unwrap();
        assert!(matches!(
            fox_h_with(&ok, 1.0, &off),
            Err(Error::Parameter(_))
        ));
    }
}
