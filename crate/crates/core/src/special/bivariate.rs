//! Generalized (two-variable) Fox-H function by double Mellin–Barnes
//! quadrature.
//!
//! ```text
//! H[x, y] = 1/(2πi)² ∫∫ Φ(s, t) Θ₁(s) Θ₂(t) x^s y^t ds dt
//! Φ(s, t) = Π_{j<K} Γ(1 - e_j + ε_j s + E_j t)
//!           / [Π_{K≤j<E} Γ(e_j - ε_j s - E_j t) Π_{j<F} Γ(1 - f_j + φ_j s + F_j t)]
//! ```
//!
//! `Θ₁` and `Θ₂` are single-variable Fox-H kernels (see
//! [`FoxHSpec::ln_kernel`]). The order superscripts are `(K, N, N', M, M')`
//! with `N, M` the numerator counts of the first variable's upper and lower
//! groups and `N', M'` those of the second; the subscripts are
//! `(E, [A:C], F, [B:D])`, the group lengths.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Float;

use super::gamma::ln_gamma_complex;
use super::mellin::{initial_height, line_integral, ContourSpec, FoxHSpec};
use crate::error::{Error, Result};

/// One joint gamma parameter `(e; ε, E)` shared by both variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointParam {
    pub value: f64,
    pub coeff1: f64,
    pub coeff2: f64,
}

impl JointParam {
    pub const fn new(value: f64, coeff1: f64, coeff2: f64) -> Self {
        Self {
            value,
            coeff1,
            coeff2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BivariateFoxHSpec {
    joint_numerators: usize,
    joint_upper: Vec<JointParam>,
    joint_lower: Vec<JointParam>,
    first: FoxHSpec,
    second: FoxHSpec,
}

impl BivariateFoxHSpec {
    /// `joint_upper[..joint_numerators]` are numerator gammas; the rest of
    /// `joint_upper` and all of `joint_lower` sit in the denominator.
    pub fn new(
        joint_numerators: usize,
        joint_upper: Vec<JointParam>,
        joint_lower: Vec<JointParam>,
        first: FoxHSpec,
        second: FoxHSpec,
    ) -> Result<Self> {
        if joint_numerators > joint_upper.len() {
            return Err(Error::Parameter(
                "joint numerator count exceeds the joint group",
            ));
        }
        for j in joint_upper.iter().chain(joint_lower.iter()) {
            if !(j.value.is_finite() && j.coeff1 > 0.0 && j.coeff2 > 0.0) {
                return Err(Error::Parameter(
                    "joint coefficients must be finite and positive",
                ));
            }
        }
        Ok(Self {
            joint_numerators,
            joint_upper,
            joint_lower,
            first,
            second,
        })
    }

    /// `(K, N, N', M, M')`.
    pub fn orders(&self) -> [usize; 5] {
        [
            self.joint_numerators,
            self.first.n(),
            self.second.n(),
            self.first.m(),
            self.second.m(),
        ]
    }

    /// `(E, A, C, F, B, D)`.
    pub fn group_sizes(&self) -> [usize; 6] {
        [
            self.joint_upper.len(),
            self.first.p(),
            self.second.p(),
            self.joint_lower.len(),
            self.first.q(),
            self.second.q(),
        ]
    }

    pub fn first(&self) -> &FoxHSpec {
        &self.first
    }

    pub fn second(&self) -> &FoxHSpec {
        &self.second
    }

    pub fn joint_upper(&self) -> &[JointParam] {
        &self.joint_upper
    }

    fn ln_joint(&self, s: Complex64, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, p) in self.joint_upper.iter().enumerate() {
            let arg = s * p.coeff1 + t * p.coeff2;
            if j < self.joint_numerators {
                acc += ln_gamma_complex(arg + (1.0 - p.value));
            } else {
                acc -= ln_gamma_complex(-arg + p.value);
            }
        }
        for p in &self.joint_lower {
            acc -= ln_gamma_complex(s * p.coeff1 + t * p.coeff2 + (1.0 - p.value));
        }
        acc
    }

    /// Picks abscissae inside both single-variable gaps that keep the
    /// joint numerator poles on the left, maximizing the distance to the
    /// nearest pole line.
    pub fn contours(&self) -> Result<(ContourSpec, ContourSpec)> {
        let bounded = |(lo, hi): (f64, f64)| -> (f64, f64) {
            match (lo.is_finite(), hi.is_finite()) {
                (true, true) => (lo, hi),
                (false, true) => (hi - 2.0, hi),
                (true, false) => (lo, lo + 2.0),
                (false, false) => (-1.0, 1.0),
            }
        };
        let (gap1, gap2) = (self.first.pole_gap(), self.second.pole_gap());
        if !(gap1.0 < gap1.1 && gap2.0 < gap2.1) {
            return Err(Error::Parameter(
                "no vertical line separates the pole sequences",
            ));
        }
        let (lo1, hi1) = bounded(gap1);
        let (lo2, hi2) = bounded(gap2);
        let margin = |c1: f64, c2: f64| -> f64 {
            let mut m = f64::INFINITY;
            if gap1.0.is_finite() {
                m = m.min(c1 - gap1.0);
            }
            if gap1.1.is_finite() {
                m = m.min(gap1.1 - c1);
            }
            if gap2.0.is_finite() {
                m = m.min(c2 - gap2.0);
            }
            if gap2.1.is_finite() {
                m = m.min(gap2.1 - c2);
            }
            for p in &self.joint_upper[..self.joint_numerators] {
                let slack = 1.0 - p.value + p.coeff1 * c1 + p.coeff2 * c2;
                m = m.min(slack / p.coeff1.hypot(p.coeff2));
            }
            m
        };
        const GRID: usize = 64;
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 1..GRID {
            let c1 = lo1 + (hi1 - lo1) * i as f64 / GRID as f64;
            for j in 1..GRID {
                let c2 = lo2 + (hi2 - lo2) * j as f64 / GRID as f64;
                let m = margin(c1, c2);
                if m > best.0 {
                    best = (m, c1, c2);
                }
            }
        }
        if !(best.0 > 0.0) {
            return Err(Error::Parameter(
                "joint poles cannot be separated by straight contours",
            ));
        }
        let first = ContourSpec::new(best.1, initial_height(self.first.decay_index()), 2000, true)?;
        let second = ContourSpec::new(
            best.2,
            initial_height(self.second.decay_index()),
            2000,
            true,
        )?;
        Ok((first, second))
    }

    fn check_contours(&self, c1: &ContourSpec, c2: &ContourSpec) -> Result<()> {
        c1.check_against(&self.first)?;
        c2.check_against(&self.second)?;
        for p in &self.joint_upper[..self.joint_numerators] {
            if !(1.0 - p.value + p.coeff1 * c1.abscissa + p.coeff2 * c2.abscissa > 0.0) {
                return Err(Error::Parameter("contours cross a joint pole sequence"));
            }
        }
        Ok(())
    }

    fn key(&self, z1: f64, z2: f64) -> Vec<u64> {
        let mut key = Vec::new();
        key.push(self.joint_numerators as u64);
        for p in self.joint_upper.iter().chain(self.joint_lower.iter()) {
            key.extend([p.value.to_bits(), p.coeff1.to_bits(), p.coeff2.to_bits()]);
        }
        for spec in [&self.first, &self.second] {
            key.extend([
                spec.m() as u64,
                spec.n() as u64,
                spec.p() as u64,
                spec.q() as u64,
            ]);
            for &(v, c) in spec.upper().iter().chain(spec.lower()) {
                key.extend([v.to_bits(), c.to_bits()]);
            }
        }
        key.extend([z1.to_bits(), z2.to_bits()]);
        key
    }
}

const INNER_REL: f64 = 1e-10;
const OUTER_REL: f64 = 1e-9;

/// Generalized Fox-H on explicit contours.
pub fn bivariate_fox_h_with(
    spec: &BivariateFoxHSpec,
    z1: f64,
    z2: f64,
    contour1: &ContourSpec,
    contour2: &ContourSpec,
) -> Result<f64> {
    if !(z1 > 0.0 && z2 > 0.0 && z1.is_finite() && z2.is_finite()) {
        return Err(Error::Domain(
            "bivariate H-function arguments must be finite positive reals",
        ));
    }
    spec.check_contours(contour1, contour2)?;
    let (ln1, ln2) = (z1.ln(), z2.ln());
    let (c1, c2) = (contour1.abscissa, contour2.abscissa);
    let mut inner_error = None;
    let outer = |y1: f64| -> f64 {
        let s = Complex64::new(c1, y1);
        let head = spec.first.ln_kernel(s) + s * ln1;
        let point = |y2: f64| -> f64 {
            let t = Complex64::new(c2, y2);
            (head + spec.second.ln_kernel(t) + t * ln2 + spec.ln_joint(s, t))
                .exp()
                .re
        };
        let upper = line_integral(point, contour2, INNER_REL, 0.0);
        let lower = line_integral(|y2: f64| point(-y2), contour2, INNER_REL, 0.0);
        match (upper, lower) {
            (Ok(u), Ok(l)) => u + l,
            (Err(e), _) | (_, Err(e)) => {
                inner_error.get_or_insert(e);
                0.0
            }
        }
    };
    let value = line_integral(outer, contour1, OUTER_REL, 0.0)?;
    if let Some(e) = inner_error {
        return Err(e);
    }
    // Conjugate symmetry folds the y1 < 0 half onto y1 > 0.
    Ok(value / (2.0 * PI * PI))
}

/// Generalized Fox-H at positive real arguments, on automatically chosen
/// contours.
pub fn bivariate_fox_h(spec: &BivariateFoxHSpec, z1: f64, z2: f64) -> Result<f64> {
    if !(z1 > 0.0 && z2 > 0.0 && z1.is_finite() && z2.is_finite()) {
        return Err(Error::Domain(
            "bivariate H-function arguments must be finite positive reals",
        ));
    }
    let (c1, c2) = spec.contours()?;
    bivariate_fox_h_with(spec, z1, z2, &c1, &c2)
}

/// Memo table for repeated bivariate evaluations. Owned per worker.
#[derive(Debug, Default, Clone)]
pub struct BivariateCache {
    entries: BTreeMap<Vec<u64>, f64>,
}

impl BivariateCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn evaluate(&mut self, spec: &BivariateFoxHSpec, z1: f64, z2: f64) -> Result<f64> {
        let key = spec.key(z1, z2);
        if let Some(&v) = self.entries.get(&key) {
            return Ok(v);
        }
        let v = bivariate_fox_h(spec, z1, z2)?;
        self.entries.insert(key, v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::mellin::fox_h;
    use alloc::vec;

    fn separable_spec() -> BivariateFoxHSpec {
        // Joint factor Γ(1 + s + t) with two exponential kernels.
        BivariateFoxHSpec::new(
            1,
            vec![JointParam::new(0.0, 1.0, 1.0)],
            vec![],
            FoxHSpec::meijer(1, 0, &[], &[0.0]).unwrap(),
            FoxHSpec::meijer(1, 0, &[], &[0.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn exponential_kernels_reduce_to_elementary_integral() {
        // Θ₁ = Γ(-s), Θ₂ = Γ(-t) are the kernels of e^{-x}, e^{-y};
        // Γ(1+s+t) = ∫ w^{s+t} e^{-w} dw, so H[x, y] = ∫ e^{-w} e^{-xw} e^{-yw} dw
        // = 1 / (1 + x + y).
        let spec = separable_spec();
        for &(x, y) in &[(0.5, 0.25), (1.0, 2.0), (3.0, 0.1)] {
            let got = bivariate_fox_h(&spec, x, y).unwrap();
            let want = 1.0 / (1.0 + x + y);
            assert!(
                ((got - want) / want).abs() < 1e-7,
                "{x} {y}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn single_variable_consistency() {
        // With y tiny the second kernel e^{-y w} → 1 and H → Γ-integral of e^{-(1+x)w}.
        let spec = separable_spec();
        let got = bivariate_fox_h(&spec, 0.7, 1e-9).unwrap();
        assert!((got - 1.0 / 1.7).abs() < 1e-6);
        let single = fox_h(spec.first(), 0.7).unwrap();
        assert!((single - (-0.7f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn orders_and_sizes() {
        let spec = separable_spec();
        assert_eq!(spec.orders(), [1, 0, 0, 1, 1]);
        assert_eq!(spec.group_sizes(), [1, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn cache_reuses_results() {
        let spec = separable_spec();
        let mut cache = BivariateCache::new();
        let a = cache.evaluate(&spec, 1.0, 2.0).unwrap();
        let b = cache.evaluate(&spec, 1.0, 2.0).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn domain_errors() {
        let spec = separable_spec();
        assert!(matches!(
            bivariate_fox_h(&spec, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            bivariate_fox_h(&spec, 1.0, -2.0),
            Err(Error::Domain(_))
        ));
    }
}
