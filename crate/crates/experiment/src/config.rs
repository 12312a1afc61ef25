//! Scenario selection, SNR grids and the `key=value` config file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dastc_core::channel::ScenarioConfig;

use crate::error::{ExperimentError, Result};

pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_GRID: SnrGrid = SnrGrid {
    start: 0.0,
    step: 2.0,
    stop: 30.0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Ω0 = Ω1 = Ω2 = 1.
    Symmetric,
    /// Relay halfway between the sources: Ω0 = 1, Ω1 = Ω2 = 16.
    Colinear,
    /// Mean powers taken from `omega0..omega2`.
    Custom,
}

impl Scenario {
    pub fn preset(self) -> Option<[f64; 3]> {
        match self {
            Scenario::Symmetric => Some([1.0, 1.0, 1.0]),
            Scenario::Colinear => Some([1.0, 16.0, 16.0]),
            Scenario::Custom => None,
        }
    }
}

impl FromStr for Scenario {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "symmetric" => Ok(Scenario::Symmetric),
            "colinear" => Ok(Scenario::Colinear),
            "custom" => Ok(Scenario::Custom),
            other => Err(ExperimentError::Config(format!(
                "unknown scenario `{other}` (expected symmetric, colinear or custom)"
            ))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Symmetric => "symmetric",
            Scenario::Colinear => "colinear",
            Scenario::Custom => "custom",
        })
    }
}

/// Which columns to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Methods {
    pub mc: bool,
    pub closed: bool,
    pub quadrature: bool,
    pub oneway: bool,
}

impl Methods {
    pub const ALL: Methods = Methods {
        mc: true,
        closed: true,
        quadrature: true,
        oneway: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.mc || self.closed || self.quadrature || self.oneway)
    }

    /// Whether any Monte-Carlo column is requested.
    pub fn needs_trials(&self) -> bool {
        self.mc || self.oneway
    }
}

impl FromStr for Methods {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self> {
        let mut methods = Methods::default();
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "mc" => methods.mc = true,
                "closed" => methods.closed = true,
                "quadrature" => methods.quadrature = true,
                "oneway" => methods.oneway = true,
                other => {
                    return Err(ExperimentError::Config(format!(
                        "unknown method `{other}` (expected mc, closed, quadrature or oneway)"
                    )))
                }
            }
        }
        if methods.is_empty() {
            return Err(ExperimentError::Config(
                "at least one method must be selected".into(),
            ));
        }
        Ok(methods)
    }
}

impl fmt::Display for Methods {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (self.mc, "mc"),
            (self.closed, "closed"),
            (self.quadrature, "quadrature"),
            (self.oneway, "oneway"),
        ];
        let picked: Vec<&str> = names
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, n)| *n)
            .collect();
        f.write_str(&picked.join(","))
    }
}

/// Inclusive `start:step:stop` grid in dB. A stop below the start gives an
/// empty grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl SnrGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.stop < self.start {
            return Vec::new();
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as u64 + 1;
        (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .collect()
    }
}

impl FromStr for SnrGrid {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            ExperimentError::Config(format!("invalid SNR grid `{s}` (expected start:step:stop)"))
        };
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let grid = match parts[..] {
            [v] => SnrGrid {
                start: v,
                step: 1.0,
                stop: v,
            },
            [start, step, stop] => SnrGrid { start, step, stop },
            _ => return Err(bad()),
        };
        if !(grid.start.is_finite()
            && grid.stop.is_finite()
            && grid.step.is_finite()
            && grid.step > 0.0)
        {
            return Err(bad());
        }
        Ok(grid)
    }
}

/// Partially specified settings. A config file and the command line each
/// produce one; [`Settings::overlay`] layers them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub scenario: Option<Scenario>,
    pub omega: [Option<f64>; 3],
    pub snr_db: Option<SnrGrid>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub methods: Option<Methods>,
    pub out: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

impl Settings {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str, path: &Path) -> Result<Settings> {
        let mut settings = Settings::default();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| ExperimentError::Parse {
                path: path.to_path_buf(),
                line: index as u64 + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail(format!("expected key=value, got `{line}`")))?;
            settings
                .set(key.trim(), value.trim())
                .map_err(|e| fail(e.to_string()))?;
        }
        Ok(settings)
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Settings::parse(&text, path)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let number = |v: &str| {
            v.parse::<f64>().map_err(|_| {
                ExperimentError::Config(format!("`{key}` expects a number, got `{v}`"))
            })
        };
        let count = |v: &str| {
            v.replace('_', "")
                .parse::<u64>()
                .or_else(|_| {
                    // Accept `1e6` style counts when they are whole numbers.
                    v.parse::<f64>()
                        .ok()
                        .filter(|x| x.fract() == 0.0 && *x >= 0.0 && *x < 1.8e19)
                        .map(|x| x as u64)
                        .ok_or(())
                })
                .map_err(|_| {
                    ExperimentError::Config(format!(
                        "`{key}` expects a nonnegative integer, got `{v}`"
                    ))
                })
        };
        match key {
            "scenario" => self.scenario = Some(value.parse()?),
            "omega0" => self.omega[0] = Some(number(value)?),
            "omega1" => self.omega[1] = Some(number(value)?),
            "omega2" => self.omega[2] = Some(number(value)?),
            "snr_db" | "snr-db" => self.snr_db = Some(value.parse()?),
            "trials" => self.trials = Some(count(value)?),
            "seed" => self.seed = Some(count(value)?),
            "methods" => self.methods = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value)),
            "plot_data" | "plot-data" => self.plot_data = Some(PathBuf::from(value)),
            other => return Err(ExperimentError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// `other` wins wherever it is set.
    pub fn overlay(self, other: Settings) -> Settings {
        Settings {
            scenario: other.scenario.or(self.scenario),
            omega: [
                other.omega[0].or(self.omega[0]),
                other.omega[1].or(self.omega[1]),
                other.omega[2].or(self.omega[2]),
            ],
            snr_db: other.snr_db.or(self.snr_db),
            trials: other.trials.or(self.trials),
            seed: other.seed.or(self.seed),
            methods: other.methods.or(self.methods),
            out: other.out.or(self.out),
            plot_data: other.plot_data.or(self.plot_data),
        }
    }

    /// Fills defaults and validates.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let scenario = self.scenario.unwrap_or(Scenario::Symmetric);
        let omega = match scenario.preset() {
            Some(preset) => {
                if self.omega.iter().any(Option::is_some) {
                    return Err(ExperimentError::Config(format!(
                        "omega overrides need scenario=custom, not {scenario}"
                    )));
                }
                preset
            }
            None => match self.omega {
                [Some(a), Some(b), Some(c)] => [a, b, c],
                _ => {
                    return Err(ExperimentError::Config(
                        "custom scenario needs omega0, omega1 and omega2".into(),
                    ))
                }
            },
        };
        let grid = self.snr_db.unwrap_or(DEFAULT_GRID);
        let scenario_config = ScenarioConfig::new(
            omega,
            grid.points(),
            self.trials.unwrap_or(DEFAULT_TRIALS),
            self.seed.unwrap_or(DEFAULT_SEED),
        )?;
        Ok(ExperimentConfig {
            scenario,
            scenario_config,
            methods: self.methods.unwrap_or(Methods::ALL),
            out: self.out.clone(),
            plot_data: self.plot_data.clone(),
        })
    }
}

/// A validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub scenario_config: ScenarioConfig,
    pub methods: Methods,
    pub out: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        let g: SnrGrid = "0:2:30".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 16);
        assert_eq!(p[15], 30.0);
        assert_eq!("5".parse::<SnrGrid>().unwrap().points(), vec![5.0]);
        assert!("10:5:0".parse::<SnrGrid>().unwrap().points().is_empty());
        assert!("0:0:10".parse::<SnrGrid>().is_err());
        assert!("0:1".parse::<SnrGrid>().is_err());
    }

    #[test]
    fn methods_round_trip() {
        let m: Methods = "closed, mc".parse().unwrap();
        assert_eq!(m.to_string(), "mc,closed");
        assert!("".parse::<Methods>().is_err());
        assert!("mc,bogus".parse::<Methods>().is_err());
    }

    #[test]
    fn file_then_flags() {
        let file = Settings::parse(
            "# run\nscenario = colinear\ntrials = 1e4\nseed=3\n",
            Path::new("f"),
        )
        .unwrap();
        let flags = Settings {
            seed: Some(9),
            ..Settings::default()
        };
        let cfg = file.overlay(flags).resolve().unwrap();
        assert_eq!(cfg.scenario_config.omega(), [1.0, 16.0, 16.0]);
        assert_eq!(cfg.scenario_config.trials(), 10_000);
        assert_eq!(cfg.scenario_config.seed(), 9);
        assert_eq!(cfg.scenario_config.snr_grid_db().len(), 16);
    }

    #[test]
    fn bad_lines_report_position() {
        let err = Settings::parse("trials=10\nfoo=1\n", Path::new("run.cfg")).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn custom_needs_all_powers() {
        let mut s = Settings {
            scenario: Some(Scenario::Custom),
            ..Settings::default()
        };
        assert!(s.resolve().is_err());
        s.omega = [Some(1.0), Some(4.0), Some(2.0)];
        assert_eq!(
            s.resolve().unwrap().scenario_config.omega(),
            [1.0, 4.0, 2.0]
        );
        s.scenario = Some(Scenario::Symmetric);
        assert!(s.resolve().is_err());
    }
}
