//! Densities of the composite SNR variables behind the high-SNR sum-rate.
//!
//! With `γ_i` exponential of mean `γ̄_i`:
//!
//! ```text
//! Z = γ_i γ_j / (γ_i + 2 γ_j)     W = γ1 γ2 / (γ1 + γ2)     T = γ0 / W
//! ```

use core::f64::consts::PI;

use crate::channel::db_to_linear;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_doubling, Tolerance};
use crate::special::gamma::gamma;
use crate::special::{bessel_k_scaled, gauss_2f1_complement};

/// Which harmonic-type combination `Z` denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZOrder {
    /// `γ1 γ2 / (γ1 + 2 γ2)`.
    OneTwo,
    /// `γ1 γ2 / (γ2 + 2 γ1)`.
    TwoOne,
}

/// Index set of the two terms in the density of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermIndex {
    /// Bessel orders 0 and 1, weights `ϖ_0, ϖ_1`.
    ZeroOne,
    /// Bessel orders 1 and 2, weights `ϖ_0, ϖ_1` shifted onto them.
    OneTwo,
}

/// Cross term inside `ζ` and `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossTerm {
    /// `2 / √(γ̄1 γ̄2)`.
    Sqrt,
    /// `2 / (γ̄1 γ̄2)`.
    Product,
}

/// A candidate reading of the density of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TConvention {
    pub index: TermIndex,
    pub cross: CrossTerm,
}

impl TConvention {
    /// The reading that normalizes and matches sampled `T`.
    pub const RESOLVED: TConvention = TConvention {
        index: TermIndex::ZeroOne,
        cross: CrossTerm::Sqrt,
    };

    pub const ALL: [TConvention; 4] = [
        TConvention::RESOLVED,
        TConvention {
            index: TermIndex::ZeroOne,
            cross: CrossTerm::Product,
        },
        TConvention {
            index: TermIndex::OneTwo,
            cross: CrossTerm::Sqrt,
        },
        TConvention {
            index: TermIndex::OneTwo,
            cross: CrossTerm::Product,
        },
    ];

    fn orders(&self) -> [u32; 2] {
        match self.index {
            TermIndex::ZeroOne => [0, 1],
            TermIndex::OneTwo => [1, 2],
        }
    }
}

/// Mean SNRs `γ̄_i = 2ρΩ_i` and the constants derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaParams {
    gbar: [f64; 3],
}

impl LemmaParams {
    pub fn new(gbar0: f64, gbar1: f64, gbar2: f64) -> Result<Self> {
        let gbar = [gbar0, gbar1, gbar2];
        if gbar.iter().any(|g| !(*g > 0.0) || !g.is_finite()) {
            return Err(Error::Parameter("mean SNRs must be finite and positive"));
        }
        Ok(Self { gbar })
    }

    /// From mean channel powers and the linear SNR `ρ`.
    pub fn from_channel(omega: [f64; 3], rho: f64) -> Result<Self> {
        Self::new(
            2.0 * rho * omega[0],
            2.0 * rho * omega[1],
            2.0 * rho * omega[2],
        )
    }

    pub fn from_channel_db(omega: [f64; 3], snr_db: f64) -> Result<Self> {
        Self::from_channel(omega, db_to_linear(snr_db))
    }

    pub fn gbar(&self) -> [f64; 3] {
        self.gbar
    }

    /// Same relay links, different direct-link mean.
    pub fn with_gbar0(&self, gbar0: f64) -> Result<Self> {
        Self::new(gbar0, self.gbar[1], self.gbar[2])
    }

    pub fn is_symmetric(&self) -> bool {
        self.gbar[1] == self.gbar[2]
    }

    /// `α = 2√(2/(γ̄1 γ̄2))`.
    pub fn lemma_alpha(&self) -> f64 {
        2.0 * libm::sqrt(2.0 / (self.gbar[1] * self.gbar[2]))
    }

    /// `β = 1/γ̄_j + 2/γ̄_i` for the ordering's `(i, j)`.
    pub fn beta(&self, order: ZOrder) -> f64 {
        let [_, g1, g2] = self.gbar;
        match order {
            ZOrder::OneTwo => 1.0 / g2 + 2.0 / g1,
            ZOrder::TwoOne => 1.0 / g1 + 2.0 / g2,
        }
    }

    /// Kernel weights `A_0 = α²`, `A_1 = αβ`.
    pub fn a_v(&self, v: u32, order: ZOrder) -> Result<f64> {
        let alpha = self.lemma_alpha();
        match v {
            0 => Ok(alpha * alpha),
            1 => Ok(alpha * self.beta(order)),
            _ => Err(Error::Parameter("kernel index must be 0 or 1")),
        }
    }

    /// Bessel argument scale of the density of `W`, `2/√(γ̄1 γ̄2)`.
    pub fn w_scale(&self) -> f64 {
        2.0 / libm::sqrt(self.gbar[1] * self.gbar[2])
    }

    /// Exponential rate of the density of `W`, `1/γ̄1 + 1/γ̄2`.
    pub fn w_rate(&self) -> f64 {
        1.0 / self.gbar[1] + 1.0 / self.gbar[2]
    }

    fn cross(&self, cross: CrossTerm) -> f64 {
        match cross {
            CrossTerm::Sqrt => self.w_scale(),
            CrossTerm::Product => 2.0 / (self.gbar[1] * self.gbar[2]),
        }
    }

    pub fn zeta_with(&self, cross: CrossTerm) -> f64 {
        self.gbar[0] * (self.w_rate() + self.cross(cross))
    }

    pub fn eta_with(&self, cross: CrossTerm) -> f64 {
        if self.is_symmetric() && cross == CrossTerm::Sqrt {
            return 0.0;
        }
        self.gbar[0] * (self.w_rate() - self.cross(cross))
    }

    pub fn zeta(&self) -> f64 {
        self.zeta_with(CrossTerm::Sqrt)
    }

    /// Zero exactly when `γ̄1 = γ̄2`.
    pub fn eta(&self) -> f64 {
        self.eta_with(CrossTerm::Sqrt)
    }

    /// `ϖ_0 = b²/γ̄0`, `ϖ_1 = b·c/γ̄0` with `b, c` the scale and rate of `W`.
    pub fn varpi(&self, n: u32) -> Result<f64> {
        let b = self.w_scale();
        match n {
            0 => Ok(b * b / self.gbar[0]),
            1 => Ok(b * self.w_rate() / self.gbar[0]),
            _ => Err(Error::Parameter("weight index must be 0 or 1")),
        }
    }

    /// Coefficient of term `k` (0 or 1) of the density of `T`.
    pub fn xi(&self, k: usize, convention: TConvention) -> Result<f64> {
        let n = *convention
            .orders()
            .get(k)
            .ok_or(Error::Parameter("term index must be 0 or 1"))?;
        let nf = n as f64;
        let b = self.w_scale();
        let ratio = gamma(3.0 + nf) * gamma(3.0 - nf) / gamma(3.5);
        Ok(libm::sqrt(PI)
            * libm::pow(2.0 * b, nf)
            * ratio
            * self.varpi(k as u32)?
            * libm::pow(self.gbar[0], 3.0 + nf))
    }
}

fn check_positive(x: f64, what: &'static str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(what));
    }
    Ok(())
}

/// `αz e^{-βz} [α K0(αz) + β K1(αz)]`.
pub fn pdf_z(z: f64, params: &LemmaParams, order: ZOrder) -> Result<f64> {
    check_positive(z, "Z density needs a finite positive argument")?;
    let alpha = params.lemma_alpha();
    let beta = params.beta(order);
    bessel_mixture(z, alpha, beta)
}

/// `b x e^{-c x} [b K0(bx) + c K1(bx)]`, the shared shape of the `Z` and
/// `W` densities. The scaled Bessel values fold `e^{-bx}` into the
/// exponential.
fn bessel_mixture(x: f64, b: f64, c: f64) -> Result<f64> {
    let bx = b * x;
    let k0 = bessel_k_scaled(0.0, bx)?;
    let k1 = bessel_k_scaled(1.0, bx)?;
    Ok(bx * libm::exp(-(c + b) * x) * (b * k0 + c * k1))
}

fn bessel_survival(x: f64, b: f64, c: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(1.0);
    }
    let bx = b * x;
    Ok(bx * libm::exp(-(c + b) * x) * bessel_k_scaled(1.0, bx)?)
}

/// `1 - αz e^{-βz} K1(αz)`.
pub fn cdf_z(z: f64, params: &LemmaParams, order: ZOrder) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::Domain(
            "Z distribution needs a non-negative argument",
        ));
    }
    if z == f64::INFINITY {
        return Ok(1.0);
    }
    let survival = bessel_survival(z, params.lemma_alpha(), params.beta(order))?;
    Ok((1.0 - survival).clamp(0.0, 1.0))
}

/// Laplace transform of `scale/γ` for `γ` exponential with mean `gbar`.
pub fn mgf_inverse_gamma(s: f64, gbar: f64, scale: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(
            "transform variable must be finite and non-negative",
        ));
    }
    check_positive(gbar, "mean SNR must be finite and positive")?;
    if !(scale == 1.0 || scale == 2.0) {
        return Err(Error::Parameter("scale must be 1 or 2"));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let x = 2.0 * libm::sqrt(scale * s / gbar);
    Ok(x * libm::exp(-x) * bessel_k_scaled(1.0, x)?)
}

/// `b w e^{-cw} [b K0(bw) + c K1(bw)]` with `b = 2/√(γ̄1γ̄2)`,
/// `c = 1/γ̄1 + 1/γ̄2`.
pub fn pdf_w(w: f64, params: &LemmaParams) -> Result<f64> {
    check_positive(w, "W density needs a finite positive argument")?;
    bessel_mixture(w, params.w_scale(), params.w_rate())
}

/// The alternative reading with `(γ̄1+γ̄2)/(γ̄1γ̄2)` multiplying the whole
/// `K1` term: `(2w/(γ̄1γ̄2)) e^{-cw} [2 K0(bw) + c K1(bw)]`. Kept for
/// comparison; it is not a density.
pub fn pdf_w_alternative(w: f64, params: &LemmaParams) -> Result<f64> {
    check_positive(w, "W density needs a finite positive argument")?;
    let [_, g1, g2] = params.gbar();
    let (b, c) = (params.w_scale(), params.w_rate());
    let bw = b * w;
    let k0 = bessel_k_scaled(0.0, bw)?;
    let k1 = bessel_k_scaled(1.0, bw)?;
    Ok(2.0 * w / (g1 * g2) * libm::exp(-(c + b) * w) * (2.0 * k0 + c * k1))
}

pub fn cdf_w(w: f64, params: &LemmaParams) -> Result<f64> {
    if !(w >= 0.0) {
        return Err(Error::Domain(
            "W distribution needs a non-negative argument",
        ));
    }
    if w == f64::INFINITY {
        return Ok(1.0);
    }
    let survival = bessel_survival(w, params.w_scale(), params.w_rate())?;
    Ok((1.0 - survival).clamp(0.0, 1.0))
}

/// Density of `T = γ0 (γ1 + γ2)/(γ1 γ2)`.
pub fn pdf_t(t: f64, params: &LemmaParams) -> Result<f64> {
    pdf_t_with(t, params, TConvention::RESOLVED)
}

/// `Σ ξ_n (t+ζ)^{-3-n} 2F1(3+n, n+1/2; 7/2; (t+η)/(t+ζ))` under a
/// candidate reading.
pub fn pdf_t_with(t: f64, params: &LemmaParams, convention: TConvention) -> Result<f64> {
    check_positive(t, "T density needs a finite positive argument")?;
    let zeta = params.zeta_with(convention.cross);
    let eta = params.eta_with(convention.cross);
    let tz = t + zeta;
    let z = (t + eta) / tz;
    let complement = (zeta - eta) / tz;
    let mut total = 0.0;
    for (k, &n) in convention.orders().iter().enumerate() {
        let nf = n as f64;
        let f = gauss_2f1_complement(3.0 + nf, nf + 0.5, 3.5, z, complement)?;
        total += params.xi(k, convention)? * libm::pow(tz, -3.0 - nf) * f;
    }
    Ok(total)
}

/// `∫₀^∞ f` by interval doubling from `[0, scale]` until the last piece is
/// below `1e-10` of the total.
pub fn total_mass<F: FnMut(f64) -> f64>(f: F, scale: f64) -> Result<f64> {
    let tol = Tolerance::new(0.0, 1e-11).with_max_panels(2000);
    integrate_doubling(f, 0.0, scale, 1e-10, tol, 80).map(|r| r.value)
}

/// `∫₀^∞ pdf_T` under a candidate reading.
pub fn t_normalization(params: &LemmaParams, convention: TConvention) -> Result<f64> {
    let mut failure = None;
    let mass = total_mass(
        |t| {
            if t <= 0.0 {
                return 0.0;
            }
            pdf_t_with(t, params, convention).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                0.0
            })
        },
        params.zeta(),
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(mass),
    }
}

/// Readings of the density of `T` that integrate to one within `tol`.
pub fn resolve_t_convention(params: &LemmaParams, tol: f64) -> Result<TConvention> {
    for convention in TConvention::ALL {
        if let Ok(mass) = t_normalization(params, convention) {
            if (mass - 1.0).abs() <= tol {
                return Ok(convention);
            }
        }
    }
    Err(Error::Parameter("no reading of the T density normalizes"))
}

/// Kolmogorov–Smirnov distance between sorted samples and a CDF.
pub fn ks_distance<F: FnMut(f64) -> f64>(sorted: &[f64], mut cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (k, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - k as f64 / n).max((k + 1) as f64 / n - f);
    }
    d
}

/// Asymptotic 1% critical value of the one-sample KS distance.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / libm::sqrt(n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_equal_means() {
        let p = LemmaParams::new(20.0, 20.0, 20.0).unwrap();
        assert!((p.lemma_alpha() - 2.0 * (2.0f64 / 400.0).sqrt()).abs() < 1e-15);
        assert!((p.beta(ZOrder::OneTwo) - 0.15).abs() < 1e-15);
        assert_eq!(p.beta(ZOrder::OneTwo), p.beta(ZOrder::TwoOne));
        assert_eq!(p.eta(), 0.0);
        assert!((p.zeta() - 20.0 * (0.1 + 0.1)).abs() < 1e-14);
        assert!(p.zeta() > p.eta());
    }

    #[test]
    fn cdf_limits() {
        let p = LemmaParams::new(5.0, 8.0, 3.0).unwrap();
        assert_eq!(cdf_z(0.0, &p, ZOrder::OneTwo).unwrap(), 0.0);
        assert!(cdf_z(1e-12, &p, ZOrder::OneTwo).unwrap() < 1e-9);
        assert!((cdf_z(1e4, &p, ZOrder::OneTwo).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cdf_z(f64::INFINITY, &p, ZOrder::TwoOne).unwrap(), 1.0);
        assert!(pdf_z(0.0, &p, ZOrder::OneTwo).is_err());
        assert!(pdf_t(-1.0, &p).is_err());
    }

    #[test]
    fn mgf_at_origin() {
        assert_eq!(mgf_inverse_gamma(0.0, 3.0, 2.0).unwrap(), 1.0);
        assert!((mgf_inverse_gamma(1e-14, 3.0, 1.0).unwrap() - 1.0).abs() < 1e-6);
        assert!(mgf_inverse_gamma(1.0, 3.0, 3.0).is_err());
    }
}
