//! Adaptive Gauss–Kronrod quadrature.
//!
//! Every integral in the crate goes through [`integrate`] (finite interval,
//! global bisection of the worst panel) or [`integrate_doubling`] (a
//! half-line or a truncated contour, extended panel by panel until the
//! freshly added piece is negligible).

use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

// 21-point Kronrod extension of the 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of a quadrature: the estimate, its error bound and the
/// integral of `|f|` (used to judge cancellation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub l1: f64,
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Accept an error this small relative to `∫|f|`, for integrals that
    /// cancel to (nearly) zero.
    pub l1_rel: f64,
    pub max_panels: usize,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            l1_rel: 0.0,
            max_panels: 4000,
        }
    }

    pub const fn with_l1_rel(mut self, l1_rel: f64) -> Self {
        self.l1_rel = l1_rel;
        self
    }

    pub const fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
}

/// Single application of the 21-point Kronrod rule on `[a, b]`.
pub fn gauss_kronrod_21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Integral {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut resabs = fc.abs() * WGK[10];
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = kronrod * half;
    let resabs = resabs * scale;
    let resasc = resasc * scale;
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Integral {
        value,
        abs_error: err,
        l1: resabs,
    }
}

/// Globally adaptive integration of `f` over `[a, b]`.
///
/// Bisects the panel with the largest error estimate until the summed
/// error falls below `max(tol.abs, tol.rel * |I|)`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            l1: 0.0,
        });
    }
    let first = gauss_kronrod_21(&mut f, a, b);
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    panels.push(Panel {
        a,
        b,
        value: first.value,
        error: first.abs_error,
        l1: first.l1,
    });
    let mut previous = first.value;
    loop {
        let (value, error, l1) = panels.iter().fold((0.0, 0.0, 0.0), |acc, p| {
            (acc.0 + p.value, acc.1 + p.error, acc.2 + p.l1)
        });
        if !value.is_finite() {
            return Err(Error::Convergence {
                last: value,
                previous,
            });
        }
        // The per-panel error floor is 50·ε·∫|f|, so never ask for less.
        let floor = 100.0 * f64::EPSILON * l1;
        if error
            <= tol
                .abs
                .max(tol.rel * value.abs())
                .max(tol.l1_rel * l1)
                .max(floor)
        {
            return Ok(Integral {
                value,
                abs_error: error,
                l1,
            });
        }
        if panels.len() >= tol.max_panels {
            return Err(Error::Convergence {
                last: value,
                previous,
            });
        }
        previous = value;
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            return Err(Error::Convergence {
                last: value,
                previous,
            });
        }
        for (lo, hi) in [(p.a, mid), (mid, p.b)] {
            let r = gauss_kronrod_21(&mut f, lo, hi);
            panels.push(Panel {
                a: lo,
                b: hi,
                value: r.value,
                error: r.abs_error,
                l1: r.l1,
            });
        }
    }
}

/// Integrates `f` over `[start, ∞)` (or a contour truncated at a growing
/// height): first `[start, start + width]`, then panels
/// `[start + width·2^k, start + width·2^(k+1)]`, stopping once a new panel
/// contributes less than `tail_tol` relative to the running `|I|`, or less
/// than `tol.l1_rel` relative to the running `∫|f|`.
pub fn integrate_doubling<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    width: f64,
    tail_tol: f64,
    tol: Tolerance,
    max_doublings: usize,
) -> Result<Integral> {
    if !(width > 0.0) {
        return Err(Error::Domain("initial width must be positive"));
    }
    let mut total = integrate(&mut f, start, start + width, tol)?;
    let mut lo = width;
    let mut previous = total.value;
    for _ in 0..max_doublings {
        let hi = 2.0 * lo;
        let piece = integrate(&mut f, start + lo, start + hi, tol)?;
        previous = total.value;
        total.value += piece.value;
        total.abs_error += piece.abs_error;
        total.l1 += piece.l1;
        if piece.l1 <= tail_tol * total.value.abs()
            || piece.l1 <= tol.l1_rel * total.l1
            || piece.l1 <= tol.abs
        {
            return Ok(total);
        }
        lo = hi;
    }
    Err(Error::Convergence {
        last: total.value,
        previous,
    })
}
