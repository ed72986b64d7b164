//! Experiment configuration (TOML).
//!
//! ```toml
//! output_dir = "results"
//! inputs = ["violin.wav"]        # optional, relative to this file
//! coarse_bits = [8, 10, 12]
//! fine_bits = [16, 20, 24]
//! k = 4
//! seed = 1
//! workers = 4
//!
//! [synth]
//! count = 5
//! seconds = 2.0
//! sample_rate_hz = 16000
//!
//! [solver]
//! max_iters = 200
//! lambda = "auto"                # or a number
//!
//! [[lambda_table]]
//! coarse_bits = 10
//! fine_bits = 20
//! lambda = 0.0005
//! ```

use std::path::{Path, PathBuf};

use pardeq_core::{default_steps, FirFilter, Quantizer, SolverConfig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{FilterParams, FrameParams};
use crate::synth::SynthParams;

/// λ as a fixed value or derived from the coarse quantizer step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lambda {
    Fixed(f64),
    Rule(LambdaRule),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaRule {
    /// `Δ_coarse / 4`.
    Auto,
}

impl Default for Lambda {
    fn default() -> Self {
        Lambda::Rule(LambdaRule::Auto)
    }
}

impl Lambda {
    pub fn resolve(&self, coarse: &Quantizer) -> f64 {
        match self {
            Lambda::Fixed(v) => *v,
            Lambda::Rule(LambdaRule::Auto) => coarse.step() / 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub max_iters: usize,
    pub rho: f64,
    pub lambda: Lambda,
    /// Dual-branch steps; both default to `1/sqrt(2 + ‖b‖₁²)`.
    pub tau: Option<f64>,
    pub sigma: Option<f64>,
    /// Single-branch steps; both default to 1.
    pub cpa_tau: Option<f64>,
    pub cpa_sigma: Option<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            max_iters: pardeq_core::solver::DEFAULT_MAX_ITERS,
            rho: 1.0,
            lambda: Lambda::default(),
            tau: None,
            sigma: None,
            cpa_tau: None,
            cpa_sigma: None,
        }
    }
}

impl SolverSection {
    pub fn cva_config(&self, filter: &FirFilter, lambda: f64) -> SolverConfig {
        let (tau, sigma) = default_steps(filter);
        SolverConfig {
            tau: self.tau.unwrap_or(tau),
            sigma: self.sigma.unwrap_or(sigma),
            rho: self.rho,
            lambda,
            max_iters: self.max_iters,
        }
    }

    pub fn cpa_config(&self, lambda: f64) -> SolverConfig {
        SolverConfig {
            tau: self.cpa_tau.unwrap_or(1.0),
            sigma: self.cpa_sigma.unwrap_or(1.0),
            rho: self.rho,
            lambda,
            max_iters: self.max_iters,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    pub coarse_bits: u32,
    pub fine_bits: u32,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub count: usize,
    pub seconds: f64,
    pub sample_rate_hz: u32,
    pub min_freq_hz: f64,
    pub max_freq_ratio: f64,
}

impl Default for SynthSection {
    fn default() -> Self {
        let p = SynthParams::default();
        Self {
            count: 5,
            seconds: p.seconds,
            sample_rate_hz: p.sample_rate_hz,
            min_freq_hz: p.min_freq_hz,
            max_freq_ratio: p.max_freq_ratio,
        }
    }
}

impl SynthSection {
    pub fn params(&self) -> SynthParams {
        SynthParams {
            seconds: self.seconds,
            sample_rate_hz: self.sample_rate_hz,
            min_freq_hz: self.min_freq_hz,
            max_freq_ratio: self.max_freq_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub inputs: Vec<PathBuf>,
    pub output_dir: PathBuf,
    pub coarse_bits: Vec<u32>,
    pub fine_bits: Vec<u32>,
    pub k: usize,
    pub seed: u64,
    pub workers: usize,
    /// Fill `wall_time_s`; off by default because timings break bitwise reproducibility.
    pub record_timing: bool,
    pub synth: SynthSection,
    pub filter: FilterParams,
    pub frame: FrameParams,
    pub solver: SolverSection,
    pub lambda_table: Vec<LambdaEntry>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            output_dir: PathBuf::from("results"),
            coarse_bits: (4..=16).collect(),
            fine_bits: (10..=24).collect(),
            k: 4,
            seed: 1,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            record_timing: false,
            synth: SynthSection::default(),
            filter: FilterParams::default(),
            frame: FrameParams::default(),
            solver: SolverSection::default(),
            lambda_table: Vec::new(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// Reads a config file; relative paths inside it resolve against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text)
            .map_err(|e| Error::Parse { path: path.to_path_buf(), detail: e.to_string() })?;
        let base = path.parent().unwrap_or(Path::new("."));
        for input in &mut cfg.inputs {
            if input.is_relative() {
                *input = base.join(&*input);
            }
        }
        if cfg.output_dir.is_relative() {
            cfg.output_dir = base.join(&cfg.output_dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.coarse_bits.is_empty() || self.fine_bits.is_empty() {
            return Err(Error::Config("bit-depth lists must not be empty".into()));
        }
        if let Some(b) = self.coarse_bits.iter().chain(&self.fine_bits).find(|b| !(1..=32).contains(*b)) {
            return Err(Error::Config(format!("bit depth {b} outside 1..=32")));
        }
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.inputs.is_empty() && self.synth.count == 0 {
            return Err(Error::Config("no input signals: list inputs or set synth.count".into()));
        }
        if !(self.synth.seconds > 0.0) || self.synth.sample_rate_hz == 0 {
            return Err(Error::Config("synthetic signals need a positive duration and rate".into()));
        }
        Ok(())
    }

    /// λ for one cell: table entry if present, else the global setting.
    pub fn lambda_for(&self, coarse: &Quantizer, fine_bits: u32) -> f64 {
        self.lambda_table
            .iter()
            .find(|e| e.coarse_bits == coarse.bits() && e.fine_bits == fine_bits)
            .map_or_else(|| self.solver.lambda.resolve(coarse), |e| e.lambda)
    }
}
