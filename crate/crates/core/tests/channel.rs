use dastc_core::channel::{sample_gamma_vars, sample_realization, trial_rng, ScenarioConfig};
use dastc_core::distributions::{ks_critical_1pct, ks_distance};
use proptest::prelude::*;

fn config(omega: [f64; 3], seed: u64) -> ScenarioConfig {
    ScenarioConfig::new(omega, vec![], 1, seed).unwrap()
}

#[test]
fn mean_power_converges() {
    let cfg = config([1.0, 1.0, 4.0], 7);
    let n = 1_000_000u64;
    let (mut s1, mut s2) = (0.0, 0.0);
    for trial in 0..n {
        let r = sample_realization(&cfg, &mut trial_rng(7, trial));
        s1 += r.h1.norm_sqr();
        s2 += r.h2.norm_sqr();
    }
    let (m1, m2) = (s1 / n as f64, s2 / n as f64);
    // |h|² is exponential, so its standard deviation equals its mean.
    assert!((m1 - 1.0).abs() < 3.0 * 1.0 / (n as f64).sqrt(), "{m1}");
    assert!((m2 - 4.0).abs() < 3.0 * 4.0 / (n as f64).sqrt(), "{m2}");
}

#[test]
fn gamma_mean_matches_exponential_moment() {
    let cfg = config([1.0, 1.0, 1.0], 11);
    let n = 1_000_000u64;
    let mut sum = 0.0;
    for trial in 0..n {
        let r = sample_realization(&cfg, &mut trial_rng(11, trial));
        sum += sample_gamma_vars(&r, 10.0).unwrap()[1];
    }
    let mean = sum / n as f64;
    assert!((mean - 20.0).abs() < 3.0 * 20.0 / 1000.0, "{mean}");
}

#[test]
fn power_is_exponential_by_ks() {
    let omega = 2.5;
    let cfg = config([omega, 1.0, 1.0], 3);
    let n = 100_000usize;
    let mut xs: Vec<f64> = (0..n as u64)
        .map(|t| sample_realization(&cfg, &mut trial_rng(3, t)).h0.norm_sqr())
        .collect();
    xs.sort_by(f64::total_cmp);
    let d = ks_distance(&xs, |x| 1.0 - (-x / omega).exp());
    assert!(d < ks_critical_1pct(n), "{d}");
}

#[test]
fn disjoint_trials_are_uncorrelated() {
    let cfg = config([1.0, 1.0, 1.0], 5);
    let n = 200_000u64;
    let (mut sxy, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for t in 0..n {
        let a = sample_realization(&cfg, &mut trial_rng(5, 2 * t)).h1.re;
        let b = sample_realization(&cfg, &mut trial_rng(5, 2 * t + 1)).h1.re;
        sxy += a * b;
        sx += a * a;
        sy += b * b;
    }
    let corr = sxy / (sx * sy).sqrt();
    assert!(corr.abs() < 4.0 / (n as f64).sqrt(), "{corr}");
}

proptest! {
    #[test]
    fn realizations_are_reproducible(seed in any::<u64>(), trial in any::<u64>()) {
        let cfg = config([1.0, 16.0, 16.0], seed);
        let a = sample_realization(&cfg, &mut trial_rng(seed, trial));
        let b = sample_realization(&cfg, &mut trial_rng(seed, trial));
        prop_assert_eq!(a, b);
    }
}
