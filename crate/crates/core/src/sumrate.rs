//! Average sum-rate in the high-SNR regime,
//!
//! ```text
//! (3 ln 2 / 2) R ≈ E[ln Z1] + E[ln Z2] + 2 E[ln(1 + T)] = I1 + I2 + 2 I3
//! ```
//!
//! with closed forms for each term and 1-D quadrature references.

use alloc::vec;
use core::f64::consts::{LN_2, PI};

use crate::channel::{db_to_linear, ScenarioConfig};
use crate::distributions::{pdf_t, pdf_z, LemmaParams, ZOrder};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_doubling, Tolerance};
use crate::special::{
    bessel_k_scaled, bivariate_fox_h, meijer_g, BivariateFoxHSpec, FoxHSpec, JointParam,
};

/// How a breakdown was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    Quadrature,
    /// Closed where the closed forms apply, quadrature elsewhere.
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRateBreakdown {
    /// Nats.
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    /// Bits/s/Hz.
    pub rsum: f64,
    pub method: Method,
}

impl SumRateBreakdown {
    pub fn compose(i1: f64, i2: f64, i3: f64, method: Method) -> Self {
        Self {
            i1,
            i2,
            i3,
            rsum: 2.0 / (3.0 * LN_2) * (i1 + i2 + 2.0 * i3),
            method,
        }
    }
}

/// Integrand used for `E[ln Z]` by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogKernel {
    /// `∫ ln z · f_Z(z) dz`.
    Plain,
    /// `Σ_{u=1,2} Σ_v A_v ∫ ln z/(1+z) · z^u e^{-βz} K_v(αz) dz`.
    Expanded,
}

/// `∫₀^∞ f` by interval doubling; the first error raised by `f` wins.
fn half_line<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    scale: f64,
    tail_tol: f64,
    tol: Tolerance,
) -> Result<f64> {
    let mut failure = None;
    let value = integrate_doubling(
        |x| {
            if x <= 0.0 {
                return 0.0;
            }
            f(x).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                0.0
            })
        },
        0.0,
        scale,
        tail_tol,
        tol,
        120,
    )?
    .value;
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

fn log_z_tolerance() -> Tolerance {
    Tolerance::new(0.0, 1e-11)
        .with_l1_rel(1e-13)
        .with_max_panels(4000)
}

/// `E[ln Z]` by quadrature.
pub fn log_z_quadrature(params: &LemmaParams, order: ZOrder, kernel: LogKernel) -> Result<f64> {
    let alpha = params.lemma_alpha();
    let beta = params.beta(order);
    let scale = 1.0 / beta;
    match kernel {
        LogKernel::Plain => half_line(
            |z| Ok(libm::log(z) * pdf_z(z, params, order)?),
            scale,
            1e-12,
            log_z_tolerance(),
        ),
        LogKernel::Expanded => {
            let mut total = 0.0;
            for u in 1..=2 {
                for v in 0..=1u32 {
                    let a_v = params.a_v(v, order)?;
                    let value = half_line(
                        |z| {
                            let k = bessel_k_scaled(v as f64, alpha * z)?;
                            let decay = libm::exp(-(beta + alpha) * z);
                            Ok(libm::log(z) / (1.0 + z) * libm::pow(z, u as f64) * decay * k)
                        },
                        scale,
                        1e-12,
                        log_z_tolerance(),
                    )?;
                    total += a_v * value;
                }
            }
            Ok(total)
        }
    }
}

pub fn i1_quadrature(params: &LemmaParams) -> Result<f64> {
    log_z_quadrature(params, ZOrder::OneTwo, LogKernel::Plain)
}

pub fn i2_quadrature(params: &LemmaParams) -> Result<f64> {
    log_z_quadrature(params, ZOrder::TwoOne, LogKernel::Plain)
}

/// The generalized Fox-H instance for kernel indices `u ∈ {1, 2}`,
/// `v ∈ {0, 1}`:
///
/// ```text
/// Γ(1+u+s+t) · G^{2,2}_{3,3}[s | 0,0,1/2; 0,0,1/2] · G^{2,0}_{1,2}[t | 1/2; v,-v]
/// ```
pub fn log_z_instance(u: u32, v: u32) -> Result<BivariateFoxHSpec> {
    if !(u == 1 || u == 2) || v > 1 {
        return Err(Error::Parameter(
            "kernel indices must be u in {1, 2} and v in {0, 1}",
        ));
    }
    let vf = v as f64;
    let first = FoxHSpec::meijer(2, 2, &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.5])?;
    let second = FoxHSpec::meijer(2, 0, &[0.5], &[vf, -vf])?;
    BivariateFoxHSpec::new(
        1,
        vec![JointParam::new(-(u as f64), 1.0, 1.0)],
        vec![],
        first,
        second,
    )
}

/// `E[ln Z]` in closed form:
///
/// ```text
/// -π^{3/2} Σ_u Σ_v A_v p^{-u-1} H[1/p, 2α/p],   p = β - α
/// ```
pub fn log_z_closed(params: &LemmaParams, order: ZOrder) -> Result<f64> {
    let alpha = params.lemma_alpha();
    let p = params.beta(order) - alpha;
    if !(p > 0.0) {
        return Err(Error::ParameterRegion("needs beta > lemma alpha"));
    }
    let (x, y) = (1.0 / p, 2.0 * alpha / p);
    let mut total = 0.0;
    for u in 1..=2u32 {
        for v in 0..=1u32 {
            let h = bivariate_fox_h(&log_z_instance(u, v)?, x, y)?;
            total += params.a_v(v, order)? * libm::pow(p, -(u as f64) - 1.0) * h;
        }
    }
    Ok(-libm::pow(PI, 1.5) * total)
}

pub fn i1_closed(params: &LemmaParams) -> Result<f64> {
    log_z_closed(params, ZOrder::OneTwo)
}

pub fn i2_closed(params: &LemmaParams) -> Result<f64> {
    log_z_closed(params, ZOrder::TwoOne)
}

/// `E[ln(1 + T)]` by quadrature against the density of `T`.
pub fn i3_quadrature(params: &LemmaParams) -> Result<f64> {
    // The integrand decays like ln t / t², so the doubling runs long.
    half_line(
        |t| Ok(libm::log1p(t) * pdf_t(t, params)?),
        params.zeta(),
        1e-10,
        Tolerance::new(0.0, 1e-11).with_max_panels(4000),
    )
}

/// `G^{3,3}_{4,4}[ζ | 0,1,1,5/2; 2+n,2-n,1,0]`.
pub fn log_t_instance(n: u32) -> Result<FoxHSpec> {
    if n > 1 {
        return Err(Error::Parameter("term index must be 0 or 1"));
    }
    let nf = n as f64;
    FoxHSpec::meijer(3, 3, &[0.0, 1.0, 1.0, 2.5], &[2.0 + nf, 2.0 - nf, 1.0, 0.0])
}

/// `ζ^{-2-n} G^{3,3}_{4,4}[ζ | …]`.
pub fn i3_kernel(n: u32, zeta: f64) -> Result<f64> {
    let g = meijer_g(&log_t_instance(n)?, zeta)?;
    Ok(libm::pow(zeta, -2.0 - n as f64) * g)
}

/// `E[ln(1 + T)]` in closed form; needs `γ̄1 = γ̄2`.
pub fn i3_closed(params: &LemmaParams) -> Result<f64> {
    if !params.is_symmetric() {
        return Err(Error::UnsupportedRegion(
            "closed form needs equal relay-link means; use quadrature",
        ));
    }
    let gbar0 = params.gbar()[0];
    let b = params.w_scale();
    let zeta = params.zeta();
    let mut total = 0.0;
    for n in 0..=1u32 {
        let nf = n as f64;
        let coeff =
            libm::sqrt(PI) * libm::pow(2.0 * b, nf) * params.varpi(n)? * libm::pow(gbar0, 3.0 + nf);
        total += coeff * i3_kernel(n, zeta)?;
    }
    Ok(total)
}

/// All three terms by quadrature.
pub fn rsum_quadrature_params(params: &LemmaParams) -> Result<SumRateBreakdown> {
    Ok(SumRateBreakdown::compose(
        i1_quadrature(params)?,
        i2_quadrature(params)?,
        i3_quadrature(params)?,
        Method::Quadrature,
    ))
}

/// Closed forms where they apply; region refusals fall back to quadrature
/// and tag the result [`Method::Hybrid`].
pub fn rsum_closed_params(params: &LemmaParams) -> Result<SumRateBreakdown> {
    let mut method = Method::Closed;
    let mut fallback = |closed: Result<f64>, quad: &dyn Fn() -> Result<f64>| match closed {
        Err(Error::ParameterRegion(_)) | Err(Error::UnsupportedRegion(_)) => {
            method = Method::Hybrid;
            quad()
        }
        other => other,
    };
    let i1 = fallback(i1_closed(params), &|| i1_quadrature(params))?;
    // Equal relay links make both orderings the same variable.
    let i2 = if params.gbar()[1] == params.gbar()[2] {
        i1
    } else {
        fallback(i2_closed(params), &|| i2_quadrature(params))?
    };
    let i3 = fallback(i3_closed(params), &|| i3_quadrature(params))?;
    Ok(SumRateBreakdown::compose(i1, i2, i3, method))
}

fn scenario_params(config: &ScenarioConfig, rho: f64) -> Result<LemmaParams> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain("SNR must be a finite positive real"));
    }
    LemmaParams::from_channel(config.omega(), rho)
}

/// Closed-form sum-rate of the scenario at linear SNR `rho`.
pub fn rsum_closed(config: &ScenarioConfig, rho: f64) -> Result<SumRateBreakdown> {
    rsum_closed_params(&scenario_params(config, rho)?)
}

/// Quadrature sum-rate of the scenario at linear SNR `rho`.
pub fn rsum_quadrature(config: &ScenarioConfig, rho: f64) -> Result<SumRateBreakdown> {
    rsum_quadrature_params(&scenario_params(config, rho)?)
}

/// Linear SNR of a grid point given in decibels.
pub fn rho_from_db(snr_db: f64) -> f64 {
    db_to_linear(snr_db)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_identity() {
        let b = SumRateBreakdown::compose(1.0, 2.0, 0.5, Method::Closed);
        assert_eq!(b.rsum, 2.0 / (3.0 * LN_2) * 4.0);
    }

    #[test]
    fn instance_group_sizes() {
        let spec = log_z_instance(1, 0).unwrap();
        assert_eq!(spec.orders(), [1, 2, 0, 2, 2]);
        assert_eq!(spec.group_sizes(), [1, 3, 1, 0, 3, 2]);
        assert!(log_z_instance(3, 0).is_err());
    }

    #[test]
    fn region_errors() {
        // γ̄1 = 2 γ̄2 puts β1 exactly on α.
        let p = LemmaParams::new(1.0, 8.0, 4.0).unwrap();
        assert!(matches!(i1_closed(&p), Err(Error::ParameterRegion(_))));
        assert!(matches!(i3_closed(&p), Err(Error::UnsupportedRegion(_))));
    }
}
