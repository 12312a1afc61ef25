//! Rayleigh channel draws and the path-loss model behind the mean powers.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Mean power at `distance` under an inverse-power law, normalized so the
/// unit (source-to-source) distance has mean power 1.
pub fn pathloss_omega(distance: f64, exponent: f64) -> Result<f64> {
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(Error::Domain("distance must be a finite positive real"));
    }
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::Domain(
            "path-loss exponent must be a finite positive real",
        ));
    }
    Ok(libm::pow(distance, -exponent))
}

/// Converts an SNR in decibels to the linear ratio `Ps / N0`.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Mean channel powers, SNR grid, trial count and seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    omega: [f64; 3],
    snr_grid_db: Vec<f64>,
    trials: u64,
    seed: u64,
}

impl ScenarioConfig {
    /// `omega` holds `[Ω0, Ω1, Ω2]`: direct link, source 1 to relay,
    /// source 2 to relay.
    pub fn new(omega: [f64; 3], snr_grid_db: Vec<f64>, trials: u64, seed: u64) -> Result<Self> {
        if omega.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidConfig(
                "mean channel powers must be finite and positive",
            ));
        }
        if snr_grid_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidConfig("SNR grid entries must be finite"));
        }
        if snr_grid_db.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidConfig("SNR grid must be strictly increasing"));
        }
        if trials == 0 {
            return Err(Error::InvalidConfig("trial count must be at least 1"));
        }
        Ok(Self {
            omega,
            snr_grid_db,
            trials,
            seed,
        })
    }

    pub fn omega(&self) -> [f64; 3] {
        self.omega
    }

    pub fn snr_grid_db(&self) -> &[f64] {
        &self.snr_grid_db
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same scenario with a different trial count.
    pub fn with_trials(&self, trials: u64) -> Result<Self> {
        Self::new(self.omega, self.snr_grid_db.clone(), trials, self.seed)
    }
}

/// One block-fading draw of the three reciprocal links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRealization {
    pub h0: Complex64,
    pub h1: Complex64,
    pub h2: Complex64,
    pub omega: [f64; 3],
}

impl ChannelRealization {
    /// Fixed gains, e.g. for deterministic tests. Mean powers default to 1.
    pub fn from_gains(h0: Complex64, h1: Complex64, h2: Complex64) -> Self {
        Self {
            h0,
            h1,
            h2,
            omega: [1.0; 3],
        }
    }

    pub fn powers(&self) -> [f64; 3] {
        [self.h0.norm_sqr(), self.h1.norm_sqr(), self.h2.norm_sqr()]
    }
}

/// The generator for one trial. Each trial index selects its own ChaCha
/// stream under the seed's key, so trials never share keystream and can
/// run in any order or on any worker.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Circularly-symmetric complex Gaussian with `E|x|² = variance`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let sd = libm::sqrt(0.5 * variance);
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(sd * re, sd * im)
}

/// Draws `h_i ~ CN(0, Ω_i)` for the scenario's mean powers.
pub fn sample_realization<R: Rng + ?Sized>(
    config: &ScenarioConfig,
    rng: &mut R,
) -> ChannelRealization {
    sample_with_omega(config.omega, rng)
}

pub(crate) fn sample_with_omega<R: Rng + ?Sized>(
    omega: [f64; 3],
    rng: &mut R,
) -> ChannelRealization {
    let h0 = complex_gaussian(rng, omega[0]);
    let h1 = complex_gaussian(rng, omega[1]);
    let h2 = complex_gaussian(rng, omega[2]);
    ChannelRealization { h0, h1, h2, omega }
}

/// `γ_i = 2ρ|h_i|²`.
pub fn sample_gamma_vars(realization: &ChannelRealization, rho: f64) -> Result<[f64; 3]> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain("SNR must be a finite positive real"));
    }
    Ok(realization.powers().map(|p| 2.0 * rho * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn pathloss_examples() {
        assert_eq!(pathloss_omega(1.0, 4.0).unwrap(), 1.0);
        assert_eq!(pathloss_omega(0.5, 4.0).unwrap(), 16.0);
        assert_eq!(pathloss_omega(2.0, 4.0).unwrap(), 0.0625);
        assert!(pathloss_omega(0.0, 4.0).is_err());
        assert!(pathloss_omega(-1.0, 4.0).is_err());
        assert!(pathloss_omega(1.0, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(ScenarioConfig::new([1.0, 1.0, 1.0], vec![0.0, 10.0], 10, 1).is_ok());
        assert!(ScenarioConfig::new([0.0, 1.0, 1.0], vec![], 10, 1).is_err());
        assert!(ScenarioConfig::new([1.0, -2.0, 1.0], vec![], 10, 1).is_err());
        assert!(ScenarioConfig::new([1.0, 1.0, 1.0], vec![10.0, 10.0], 10, 1).is_err());
        assert!(ScenarioConfig::new([1.0, 1.0, 1.0], vec![10.0, 0.0], 10, 1).is_err());
        assert!(ScenarioConfig::new([1.0, 1.0, 1.0], vec![], 0, 1).is_err());
    }

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let config = ScenarioConfig::new([1.0, 2.0, 3.0], vec![], 1, 42).unwrap();
        let a = sample_realization(&config, &mut trial_rng(42, 0));
        let b = sample_realization(&config, &mut trial_rng(42, 0));
        let c = sample_realization(&config, &mut trial_rng(42, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn gamma_vars_direct_formula() {
        let one = Complex64::new(0.6, 0.8);
        let r = ChannelRealization::from_gains(one, one, one);
        let g = sample_gamma_vars(&r, 10.0).unwrap();
        for v in g {
            assert!((v - 20.0).abs() < 1e-12);
        }
        let g = sample_gamma_vars(&r, 0.5).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-15);
        assert!(sample_gamma_vars(&r, 0.0).is_err());
    }
}
