//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real parameters and
//! real `z < 1`.
//!
//! `|z| ≤ 1/2` uses the defining series. `z < -1/2` is mapped into `(0, 1)`
//! by Pfaff's transformation, and `z > 1/2` goes through the connection
//! formula around `z = 1`, including the logarithmic cases where `c - a - b`
//! is an integer.

use num_traits::Float;

use super::gamma::{digamma, is_nonpositive_integer, ln_gamma_signed, rgamma};
use crate::error::{Error, Result};

const EPS: f64 = 1e-17;
const MAX_TERMS: usize = 200_000;

/// `₂F₁(a, b; c; z)`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1_complement(a, b, c, z, 1.0 - z)
}

/// `₂F₁(a, b; c; z)` with the complement `1 - z` supplied by the caller.
///
/// When `z` is close to 1 the caller can often form `1 - z` without the
/// cancellation of the subtraction.
pub fn gauss_2f1_complement(a: f64, b: f64, c: f64, z: f64, one_minus_z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::Domain("2F1 arguments must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter("2F1 undefined for c = 0, -1, -2, ..."));
    }
    // `z` may round to 1 when the supplied complement is still positive.
    if z > 1.0 || !(one_minus_z > 0.0) {
        return Err(Error::Domain("2F1 requires z < 1"));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) || z.abs() <= 0.5 {
        return series(a, b, c, z);
    }
    if z < 0.0 {
        // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
        let w = z / (z - 1.0);
        let one_minus_w = 1.0 / one_minus_z;
        let inner = if is_nonpositive_integer(c - b) || w <= 0.5 {
            series(a, c - b, c, w)?
        } else {
            near_one(a, c - b, c, one_minus_w)?
        };
        return Ok(one_minus_z.powf(-a) * inner);
    }
    near_one(a, b, c, one_minus_z)
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut previous = 0.0;
    for k in 0..MAX_TERMS {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        previous = sum;
        sum += term;
        if term == 0.0 || (term.abs() <= EPS * sum.abs() && k > 2.0) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        last: sum,
        previous,
    })
}

/// Product of gammas `Π Γ(num) / Π Γ(den)`, zero when a denominator sits
/// on a pole.
fn gamma_ratio(num: &[f64], den: &[f64]) -> f64 {
    if den.iter().any(|&x| is_nonpositive_integer(x)) {
        return 0.0;
    }
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = ln_gamma_signed(x);
        log += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x);
        log -= l;
        sign *= s;
    }
    sign * log.exp()
}

/// Sums `Σ_n t_n g_n` where `t_{n+1} = t_n · ratio(n)` and `g_n` is a
/// bracket evaluated per term.
fn log_series<R, G>(first: f64, s: f64, mut ratio: R, mut bracket: G) -> Result<f64>
where
    R: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    let mut coeff = first;
    let mut sum = 0.0;
    let mut peak = 0.0f64;
    let mut previous = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coeff * bracket(nf);
        previous = sum;
        sum += term;
        peak = peak.max(term.abs());
        if n > 2 && term.abs() <= EPS * sum.abs().max(peak * 1e-3) {
            return Ok(sum);
        }
        coeff *= ratio(nf) * s;
        if coeff == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        last: sum,
        previous,
    })
}

/// Connection formula around `z = 1`, written in terms of `s = 1 - z`.
fn near_one(a: f64, b: f64, c: f64, s: f64) -> Result<f64> {
    let m = c - a - b;
    let ln_s = s.ln();
    if m != m.round() {
        let first = gamma_ratio(&[c, m], &[c - a, c - b]);
        let second = gamma_ratio(&[c, -m], &[a, b]);
        let mut value = 0.0;
        if first != 0.0 {
            value += first * series(a, b, 1.0 - m, s)?;
        }
        if second != 0.0 {
            value += second * s.powf(m) * series(c - a, c - b, m + 1.0, s)?;
        }
        return Ok(value);
    }
    let k = m.abs() as usize;
    let kf = k as f64;
    if k == 0 {
        let pre = gamma_ratio(&[a + b], &[a, b]);
        let sum = log_series(
            1.0,
            s,
            |n| (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)),
            |n| 2.0 * digamma(n + 1.0) - digamma(a + n) - digamma(b + n) - ln_s,
        )?;
        return Ok(pre * sum);
    }
    if m > 0.0 {
        // c = a + b + k
        let mut finite = 0.0;
        let mut t = 1.0;
        for n in 0..k {
            let nf = n as f64;
            finite += t;
            t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - kf + nf)) * s;
        }
        finite *= gamma_ratio(&[kf, c], &[a + kf, b + kf]);
        let pre = gamma_ratio(&[c], &[a, b]);
        if pre == 0.0 {
            return Ok(finite);
        }
        let lead = s.powi(k as i32) * rgamma(kf + 1.0);
        let tail = log_series(
            lead,
            s,
            |n| (a + kf + n) * (b + kf + n) / ((n + 1.0) * (n + kf + 1.0)),
            |n| {
                ln_s - digamma(n + 1.0) - digamma(n + kf + 1.0)
                    + digamma(a + n + kf)
                    + digamma(b + n + kf)
            },
        )?;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(finite - sign * pre * tail)
    } else {
        // c = a + b - k
        let mut finite = 0.0;
        let mut t = 1.0;
        for n in 0..k {
            let nf = n as f64;
            finite += t;
            t *= (a - kf + nf) * (b - kf + nf) / ((nf + 1.0) * (1.0 - kf + nf)) * s;
        }
        finite *= gamma_ratio(&[kf, c], &[a, b]) * s.powi(-(k as i32));
        let pre = gamma_ratio(&[c], &[a - kf, b - kf]);
        if pre == 0.0 {
            return Ok(finite);
        }
        let tail = log_series(
            rgamma(kf + 1.0),
            s,
            |n| (a + n) * (b + n) / ((n + 1.0) * (n + kf + 1.0)),
            |n| ln_s - digamma(n + 1.0) - digamma(n + kf + 1.0) + digamma(a + n) + digamma(b + n),
        )?;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(finite - sign * pre * tail)
    }
}
