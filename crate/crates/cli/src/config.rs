//! Flat `key = value` experiment configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use fracsysid::noise::ATTENUATION_ORDERS;
use fracsysid::{FractionalModel, NoiseSpec, PowerRange, RefinementSchedule, SamplingGrid};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Uniform,
    Refinement,
}

/// Which record candidates are scored against in a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitnessReference {
    /// The noiseless synthetic response.
    Clean,
    /// The corrupted record the equations are built from.
    Corrupted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub period: f64,
    pub memory: f64,
    pub model: FractionalModel,
    pub noise_amplitude: f64,
    pub noise_seed: u64,
    pub noise_orders: Vec<f64>,
    pub noise_records: usize,
    pub range: PowerRange,
    pub algorithm: Algorithm,
    pub m: usize,
    pub n: usize,
    pub schedule: String,
    pub stop_threshold: Option<f64>,
    pub early_abandon: bool,
    pub fitness_reference: FitnessReference,
    pub parallel: bool,
    pub out_dir: PathBuf,
}

pub const KEYS: &[&str] = &[
    "grid.T",
    "grid.L",
    "model.a1",
    "model.a2",
    "model.a3",
    "model.alpha",
    "model.beta",
    "noise.amplitude",
    "noise.seed",
    "noise.orders",
    "noise.records",
    "range.alpha_min",
    "range.alpha_max",
    "range.beta_min",
    "range.beta_max",
    "search.algorithm",
    "search.m",
    "search.n",
    "search.schedule",
    "search.stop_threshold",
    "search.early_abandon",
    "search.fitness_reference",
    "search.parallel",
    "out.dir",
];

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::standard()
    }
}

impl ExperimentConfig {
    /// T = 0.001 s, L = 10 s, the worked-example model, noise in [-0.05, 0.05].
    pub fn standard() -> Self {
        let range = PowerRange::standard();
        Self {
            period: 0.001,
            memory: 10.0,
            model: FractionalModel::example(),
            noise_amplitude: 0.05,
            noise_seed: 0,
            noise_orders: ATTENUATION_ORDERS.to_vec(),
            noise_records: 10,
            range,
            algorithm: Algorithm::Uniform,
            m: 20,
            n: 20,
            schedule: RefinementSchedule::standard().to_string(),
            stop_threshold: None,
            early_abandon: false,
            fitness_reference: FitnessReference::Clean,
            parallel: true,
            out_dir: PathBuf::from("out"),
        }
    }

    /// The standard profile at T = 0.01 s.
    pub fn fast() -> Self {
        Self {
            period: 0.01,
            ..Self::standard()
        }
    }

    pub fn profile(name: &str) -> Result<Self, CliError> {
        match name {
            "standard" => Ok(Self::standard()),
            "fast" => Ok(Self::fast()),
            other => Err(CliError::Config(format!("unknown profile `{other}`"))),
        }
    }

    /// Applies `key = value` lines on top of `self`. `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value, got `{raw}`", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::standard();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not key=value")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "grid.T" => self.period = float(key, value)?,
            "grid.L" => self.memory = float(key, value)?,
            "model.a1" => self.model.a1 = float(key, value)?,
            "model.a2" => self.model.a2 = float(key, value)?,
            "model.a3" => self.model.a3 = float(key, value)?,
            "model.alpha" => self.model.alpha = float(key, value)?,
            "model.beta" => self.model.beta = float(key, value)?,
            "noise.amplitude" => self.noise_amplitude = float(key, value)?,
            "noise.seed" => self.noise_seed = integer(key, value)?,
            "noise.orders" => {
                self.noise_orders = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| float(key, s))
                    .collect::<Result<_, _>>()?
            }
            "noise.records" => self.noise_records = integer(key, value)?,
            "range.alpha_min" => self.range.alpha_min = float(key, value)?,
            "range.alpha_max" => self.range.alpha_max = float(key, value)?,
            "range.beta_min" => self.range.beta_min = float(key, value)?,
            "range.beta_max" => self.range.beta_max = float(key, value)?,
            "search.algorithm" => {
                self.algorithm = match value {
                    "1" => Algorithm::Uniform,
                    "2" => Algorithm::Refinement,
                    _ => return Err(bad(key, value, "1 or 2")),
                }
            }
            "search.m" => self.m = integer(key, value)?,
            "search.n" => self.n = integer(key, value)?,
            "search.schedule" => self.schedule = value.to_string(),
            "search.stop_threshold" => {
                self.stop_threshold = match value {
                    "" | "none" => None,
                    v => Some(float(key, v)?),
                }
            }
            "search.early_abandon" => self.early_abandon = boolean(key, value)?,
            "search.fitness_reference" => {
                self.fitness_reference = match value {
                    "clean" => FitnessReference::Clean,
                    "corrupted" => FitnessReference::Corrupted,
                    _ => return Err(bad(key, value, "clean or corrupted")),
                }
            }
            "search.parallel" => self.parallel = boolean(key, value)?,
            "out.dir" => self.out_dir = PathBuf::from(value),
            _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Every key, one per line, in [`KEYS`] order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for key in KEYS {
            let _ = writeln!(s, "{key} = {}", self.get(key));
        }
        s
    }

    pub fn get(&self, key: &str) -> String {
        match key {
            "grid.T" => self.period.to_string(),
            "grid.L" => self.memory.to_string(),
            "model.a1" => self.model.a1.to_string(),
            "model.a2" => self.model.a2.to_string(),
            "model.a3" => self.model.a3.to_string(),
            "model.alpha" => self.model.alpha.to_string(),
            "model.beta" => self.model.beta.to_string(),
            "noise.amplitude" => self.noise_amplitude.to_string(),
            "noise.seed" => self.noise_seed.to_string(),
            "noise.orders" => self
                .noise_orders
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(","),
            "noise.records" => self.noise_records.to_string(),
            "range.alpha_min" => self.range.alpha_min.to_string(),
            "range.alpha_max" => self.range.alpha_max.to_string(),
            "range.beta_min" => self.range.beta_min.to_string(),
            "range.beta_max" => self.range.beta_max.to_string(),
            "search.algorithm" => match self.algorithm {
                Algorithm::Uniform => "1".into(),
                Algorithm::Refinement => "2".into(),
            },
            "search.m" => self.m.to_string(),
            "search.n" => self.n.to_string(),
            "search.schedule" => self.schedule.clone(),
            "search.stop_threshold" => self
                .stop_threshold
                .map_or_else(|| "none".to_string(), |t| t.to_string()),
            "search.early_abandon" => self.early_abandon.to_string(),
            "search.fitness_reference" => match self.fitness_reference {
                FitnessReference::Clean => "clean".into(),
                FitnessReference::Corrupted => "corrupted".into(),
            },
            "search.parallel" => self.parallel.to_string(),
            "out.dir" => self.out_dir.display().to_string(),
            _ => String::new(),
        }
    }

    pub fn grid(&self) -> Result<SamplingGrid, CliError> {
        SamplingGrid::new(self.period, self.memory).map_err(config_error)
    }

    pub fn true_model(&self) -> Result<FractionalModel, CliError> {
        self.model.validate().map_err(config_error)?;
        Ok(self.model)
    }

    pub fn noise(&self) -> Result<NoiseSpec, CliError> {
        NoiseSpec::new(self.noise_amplitude, self.noise_seed).map_err(config_error)
    }

    pub fn power_range(&self) -> Result<PowerRange, CliError> {
        let r = self.range;
        PowerRange::new(r.alpha_min, r.alpha_max, r.beta_min, r.beta_max).map_err(config_error)
    }

    pub fn refinement_schedule(&self) -> Result<RefinementSchedule, CliError> {
        let schedule: RefinementSchedule = self.schedule.parse().map_err(config_error)?;
        Ok(match self.stop_threshold {
            Some(t) => schedule.with_stop_threshold(t),
            None => schedule,
        })
    }

    /// Checks every module-level invariant the configuration feeds.
    pub fn validate(&self) -> Result<(), CliError> {
        self.grid()?;
        self.true_model()?;
        self.noise()?;
        self.power_range()?;
        self.refinement_schedule()?;
        if self.m == 0 || self.n == 0 {
            return Err(CliError::Config("search.m and search.n must be at least 1".into()));
        }
        if self.noise_records == 0 {
            return Err(CliError::Config("noise.records must be at least 1".into()));
        }
        if self.noise_orders.is_empty() {
            return Err(CliError::Config("noise.orders is empty".into()));
        }
        Ok(())
    }
}

fn config_error(e: fracsysid::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn bad(key: &str, value: &str, expected: &str) -> CliError {
    CliError::Config(format!("{key}: expected {expected}, got `{value}`"))
}

fn float(key: &str, value: &str) -> Result<f64, CliError> {
    value.parse().map_err(|_| bad(key, value, "a number"))
}

fn integer<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| bad(key, value, "a non-negative integer"))
}

fn boolean(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(bad(key, value, "true or false")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut cfg = ExperimentConfig::fast();
        cfg.set("search.algorithm", "2").unwrap();
        cfg.set("noise.orders", "0.3, -0.3").unwrap();
        cfg.set("search.stop_threshold", "0.25").unwrap();
        cfg.set("out.dir", "/tmp/x y").unwrap();
        let text = cfg.to_text();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn comments_blank_lines_and_overrides() {
        let cfg = ExperimentConfig::parse(
            "# experiment\n\ngrid.T = 0.01   # fast\nnoise.seed=7\nsearch.early_abandon = true\n",
        )
        .unwrap();
        assert_eq!(cfg.period, 0.01);
        assert_eq!(cfg.noise_seed, 7);
        assert!(cfg.early_abandon);
        let mut cfg = cfg;
        cfg.apply_override("model.a3=2").unwrap();
        assert_eq!(cfg.model.a3, 2.0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(ExperimentConfig::parse("grid.T 0.01").is_err());
        assert!(ExperimentConfig::parse("grid.X = 1").is_err());
        assert!(ExperimentConfig::parse("grid.T = fast").is_err());
        assert!(ExperimentConfig::parse("search.algorithm = 3").is_err());
        assert!(ExperimentConfig::parse("search.early_abandon = maybe").is_err());
        assert!(ExperimentConfig::standard().apply_override("grid.T").is_err());
    }

    #[test]
    fn validation_catches_invariant_violations() {
        assert!(ExperimentConfig::standard().validate().is_ok());
        for bad in [
            "grid.T = 0",
            "grid.T = -0.001",
            "model.a1 = 0",
            "model.beta = 3",
            "noise.amplitude = -1",
            "range.alpha_min = 1.0",
            "search.schedule = ",
            "search.schedule = 4,4",
            "search.m = 0",
        ] {
            let cfg = ExperimentConfig::parse(bad).unwrap();
            assert!(matches!(cfg.validate(), Err(CliError::Config(_))), "{bad}");
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(ExperimentConfig::profile("fast").unwrap().period, 0.01);
        assert_eq!(ExperimentConfig::profile("standard").unwrap().period, 0.001);
        assert!(ExperimentConfig::profile("slow").is_err());
    }
}
