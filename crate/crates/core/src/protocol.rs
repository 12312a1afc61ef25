//! Three-phase two-way relaying with a distributed Alamouti code.
//!
//! Phase 1: both sources send the first code row to the relay. Phase 2:
//! the relay forwards `G·yR` to source 2 while source 1 sends its second
//! row over the direct link. Phase 3 mirrors phase 2 towards source 1.
//! Power is normalized to `Ps = 1`, `N0 = 1/ρ`.

use core::f64::consts::LN_2;
use core::ops::Range;

use num_complex::Complex64;
use rand::Rng;

use crate::channel::{sample_realization, trial_rng, ChannelRealization, ScenarioConfig};
use crate::error::{Error, Result};

/// `[[s1, s2], [-s2*, s1*]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlamoutiCodeword(pub [[Complex64; 2]; 2]);

impl AlamoutiCodeword {
    pub fn encode(s1: Complex64, s2: Complex64) -> Self {
        Self([[s1, s2], [-s2.conj(), s1.conj()]])
    }

    pub fn row(&self, i: usize) -> [Complex64; 2] {
        self.0[i]
    }

    /// `C·Cᴴ`.
    pub fn gram(&self) -> [[Complex64; 2]; 2] {
        let c = &self.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = c[i][0] * c[j][0].conj() + c[i][1] * c[j][1].conj();
            }
        }
        out
    }
}

pub fn alamouti_encode(s1: Complex64, s2: Complex64) -> AlamoutiCodeword {
    AlamoutiCodeword::encode(s1, s2)
}

/// Relay amplification rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainMode {
    /// `G² = 1/(|h1|² + |h2|² + 1/ρ)`.
    Exact,
    /// `G² = 1/(|h1|² + |h2|²)`.
    HighSnr,
}

pub fn relay_gain(h1: Complex64, h2: Complex64, rho: f64, mode: GainMode) -> Result<f64> {
    check_rho(rho)?;
    let links = h1.norm_sqr() + h2.norm_sqr();
    let denom = match mode {
        GainMode::Exact => links + 1.0 / rho,
        GainMode::HighSnr => {
            if !(links > 0.0) {
                return Err(Error::DegenerateChannel("both relay links vanish"));
            }
            links
        }
    };
    Ok(libm::sqrt(1.0 / denom))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain("SNR must be a finite positive real"));
    }
    Ok(())
}

/// Symbol pairs of source 1 (`s`) and source 2 (`x`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symbols {
    pub s: [Complex64; 2],
    pub x: [Complex64; 2],
}

impl Symbols {
    pub fn codewords(&self) -> (AlamoutiCodeword, AlamoutiCodeword) {
        (
            AlamoutiCodeword::encode(self.s[0], self.s[1]),
            AlamoutiCodeword::encode(self.x[0], self.x[1]),
        )
    }
}

/// Everything received over the three phases, with the noise that was
/// injected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSignals {
    pub y_r: [Complex64; 2],
    pub y1: [Complex64; 2],
    pub y2: [Complex64; 2],
    pub n_r: [Complex64; 2],
    pub n1: [Complex64; 2],
    pub n2: [Complex64; 2],
    pub gain: f64,
}

/// Runs the three phases. With `noise = None` every noise sample is zero.
pub fn run_three_phase<R: Rng + ?Sized>(
    realization: &ChannelRealization,
    symbols: &Symbols,
    rho: f64,
    mode: GainMode,
    noise: Option<&mut R>,
) -> Result<PhaseSignals> {
    let ChannelRealization { h0, h1, h2, .. } = *realization;
    let gain = relay_gain(h1, h2, rho, mode)?;
    let zero = [Complex64::new(0.0, 0.0); 2];
    let (n_r, n1, n2) = match noise {
        Some(rng) => {
            let n0 = 1.0 / rho;
            let mut draw = || [0, 1].map(|_| crate::channel::complex_gaussian(rng, n0));
            (draw(), draw(), draw())
        }
        None => (zero, zero, zero),
    };
    let (s, x) = symbols.codewords();
    let (s1, s2, x1, x2) = (s.row(0), s.row(1), x.row(0), x.row(1));
    let y_r = [0, 1].map(|k| h1 * s1[k] + h2 * x1[k] + n_r[k]);
    let y2 = [0, 1].map(|k| h2 * gain * y_r[k] + h0 * s2[k] + n2[k]);
    let y1 = [0, 1].map(|k| h1 * gain * y_r[k] + h0 * x2[k] + n1[k]);
    Ok(PhaseSignals {
        y_r,
        y1,
        y2,
        n_r,
        n1,
        n2,
        gain,
    })
}

/// Post-cancellation signals at sources 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSignals {
    pub y1: [Complex64; 2],
    pub y2: [Complex64; 2],
    /// `[G·h1·h2, h0]`.
    pub h_new: [Complex64; 2],
}

impl EffectiveSignals {
    /// `h_new · C` for a 2×2 codeword.
    pub fn apply(&self, codeword: &AlamoutiCodeword) -> [Complex64; 2] {
        let c = &codeword.0;
        [0, 1].map(|k| self.h_new[0] * c[0][k] + self.h_new[1] * c[1][k])
    }
}

/// Each source removes its own first row, which the relay echoed back.
pub fn cancel_self_interference(
    signals: &PhaseSignals,
    realization: &ChannelRealization,
    symbols: &Symbols,
) -> EffectiveSignals {
    let ChannelRealization { h0, h1, h2, .. } = *realization;
    let g = signals.gain;
    let (s, x) = symbols.codewords();
    let (s1, x1) = (s.row(0), x.row(0));
    let y1 = [0, 1].map(|k| signals.y1[k] - g * h1 * h1 * s1[k]);
    let y2 = [0, 1].map(|k| signals.y2[k] - g * h2 * h2 * x1[k]);
    EffectiveSignals {
        y1,
        y2,
        h_new: [g * h1 * h2, h0],
    }
}

fn det2(m: [[Complex64; 2]; 2]) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `log2 det(I2 + scale · hᴴ h)` for a 1×2 row `h`.
fn log2_det_rank_one(h: [Complex64; 2], scale: f64) -> f64 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { 1.0 } else { 0.0 };
            m[i][j] = Complex64::new(id, 0.0) + h[i].conj() * h[j] * scale;
        }
    }
    libm::log2(det2(m).re)
}

/// Per-direction rates `(C_S, C_X)` in bits/s/Hz before the time-sharing
/// factor: `C_S` carries source 1's data to source 2, `C_X` the reverse.
pub fn directional_capacities(
    realization: &ChannelRealization,
    rho: f64,
    mode: GainMode,
) -> Result<(f64, f64)> {
    let ChannelRealization { h0, h1, h2, .. } = *realization;
    let g = relay_gain(h1, h2, rho, mode)?;
    let g2 = g * g;
    let h_new = [g * h1 * h2, h0];
    // Alamouti rows give R_s = R_x = 2·Ps·I2.
    let n0 = 1.0 / rho;
    let c_s = log2_det_rank_one(h_new, 2.0 / (n0 * (1.0 + g2 * h2.norm_sqr())));
    let c_x = log2_det_rank_one(h_new, 2.0 / (n0 * (1.0 + g2 * h1.norm_sqr())));
    Ok((c_s, c_x))
}

/// Two-way sum-rate of one realization via the 2×2 determinants.
pub fn instantaneous_sumrate_det(
    realization: &ChannelRealization,
    rho: f64,
    mode: GainMode,
) -> Result<f64> {
    let (c_s, c_x) = directional_capacities(realization, rho, mode)?;
    Ok(2.0 / 3.0 * (c_s + c_x))
}

/// Scalar form in the `γ_i = 2ρ|h_i|²`, with the high-SNR gain.
pub fn instantaneous_sumrate_scalar(realization: &ChannelRealization, rho: f64) -> Result<f64> {
    let g = crate::channel::sample_gamma_vars(realization, rho)?;
    let (g0, g1, g2) = (g[0], g[1], g[2]);
    if !(g1 + g2 > 0.0) {
        return Err(Error::DegenerateChannel("both relay links vanish"));
    }
    let num = g1 * g2 + g0 * (g1 + g2);
    let a = num / (g1 + 2.0 * g2);
    let b = num / (g2 + 2.0 * g1);
    Ok(2.0 / 3.0 * (libm::log2(1.0 + a) + libm::log2(1.0 + b)))
}

/// High-SNR integrands `(ln Z1, ln Z2, ln(1 + T))` in nats.
pub fn high_snr_split(realization: &ChannelRealization, rho: f64) -> Result<(f64, f64, f64)> {
    let g = crate::channel::sample_gamma_vars(realization, rho)?;
    let (g0, g1, g2) = (g[0], g[1], g[2]);
    if !(g1 > 0.0 && g2 > 0.0) {
        return Err(Error::DegenerateChannel("relay link SNR is zero"));
    }
    let i1 = libm::log(g1 * g2 / (g1 + 2.0 * g2));
    let i2 = libm::log(g1 * g2 / (g2 + 2.0 * g1));
    let i3 = libm::log1p(g0 * (g1 + g2) / (g1 * g2));
    Ok((i1, i2, i3))
}

/// `(2 / (3 ln 2)) (i1 + i2 + 2 i3)`.
pub fn compose_split(i1: f64, i2: f64, i3: f64) -> f64 {
    2.0 / (3.0 * LN_2) * (i1 + i2 + 2.0 * i3)
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunningStats {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two disjoint samples. Not commutative in floating point,
    /// so callers merge in a fixed order.
    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / n as f64;
        self.mean += delta * w;
        self.m2 += other.m2 + delta * delta * self.count as f64 * w;
        self.count = n;
    }

    pub fn estimate(&self) -> SumRateEstimate {
        let stderr = if self.count > 1 {
            libm::sqrt(self.m2 / (self.count - 1) as f64 / self.count as f64)
        } else {
            0.0
        };
        SumRateEstimate {
            mean: self.mean,
            stderr,
            trials: self.count,
        }
    }
}

/// Monte-Carlo mean, its standard error and the sample size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumRateEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Statistics of one block of trials for the two-way scheme, the one-way
/// baseline and their per-realization difference.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlockStats {
    pub two_way: RunningStats,
    pub one_way: RunningStats,
    pub gain: RunningStats,
}

impl BlockStats {
    pub fn merge(&mut self, other: &BlockStats) {
        self.two_way.merge(&other.two_way);
        self.one_way.merge(&other.one_way);
        self.gain.merge(&other.gain);
    }
}

/// Trials per block. Blocks are the unit of parallel work and are always
/// merged in index order.
pub const BLOCK_TRIALS: u64 = 4096;

/// Number of blocks covering `trials`.
pub fn block_count(trials: u64) -> u64 {
    trials.div_ceil(BLOCK_TRIALS)
}

/// Evaluates block `index` of the scenario at linear SNR `rho`.
pub fn run_block(
    config: &ScenarioConfig,
    rho: f64,
    mode: GainMode,
    index: u64,
) -> Result<BlockStats> {
    let start = index * BLOCK_TRIALS;
    let end = (start + BLOCK_TRIALS).min(config.trials());
    run_trials(config, rho, mode, start..end)
}

/// Evaluates an explicit trial range. Trial `k` always sees the same
/// channel draw whatever range it is evaluated in.
pub fn run_trials(
    config: &ScenarioConfig,
    rho: f64,
    mode: GainMode,
    trials: Range<u64>,
) -> Result<BlockStats> {
    check_rho(rho)?;
    let mut stats = BlockStats::default();
    for trial in trials {
        let mut rng = trial_rng(config.seed(), trial);
        let realization = sample_realization(config, &mut rng);
        let (c_s, c_x) = directional_capacities(&realization, rho, mode)?;
        let total = c_s + c_x;
        stats.two_way.push(2.0 / 3.0 * total);
        stats.one_way.push(0.5 * total);
        stats.gain.push(total / 6.0);
    }
    Ok(stats)
}

/// Sequential block loop; a parallel caller that merges the same blocks in
/// the same order gets bit-identical results.
pub fn monte_carlo_blocks(config: &ScenarioConfig, rho: f64, mode: GainMode) -> Result<BlockStats> {
    let mut total = BlockStats::default();
    for index in 0..block_count(config.trials()) {
        total.merge(&run_block(config, rho, mode, index)?);
    }
    Ok(total)
}

/// Two-way average sum-rate.
pub fn monte_carlo_sumrate(
    config: &ScenarioConfig,
    rho: f64,
    mode: GainMode,
) -> Result<SumRateEstimate> {
    Ok(monte_carlo_blocks(config, rho, mode)?.two_way.estimate())
}

/// One-way baseline: the same effective channels with a 1/2 time-sharing
/// factor per direction. Uses the exact relay gain.
pub fn oneway_baseline_sumrate(config: &ScenarioConfig, rho: f64) -> Result<SumRateEstimate> {
    Ok(monte_carlo_blocks(config, rho, GainMode::Exact)?
        .one_way
        .estimate())
}
