//! The model manifest written next to simulated observations.
//!
//! It records everything `reconstruct` needs to rebuild the exact operators:
//! filter design parameters plus a SHA-256 of the resulting taps, the
//! downsampling factor, both bit depths, the frame geometry, the
//! normalization gain, the unpadded length and the solver settings.

use std::path::{Path, PathBuf};

use pardeq_core::{FirFilter, SolverConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pipeline::{FilterParams, FrameParams};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterRecord {
    pub num_taps: usize,
    pub beta: f64,
    pub l1_norm: f64,
    pub taps_sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverRecord {
    pub tau: f64,
    pub sigma: f64,
    pub rho: f64,
    pub lambda: f64,
    pub max_iters: usize,
    pub cpa_tau: f64,
    pub cpa_sigma: f64,
}

impl SolverRecord {
    pub fn cva(&self) -> SolverConfig {
        SolverConfig { tau: self.tau, sigma: self.sigma, rho: self.rho, lambda: self.lambda, max_iters: self.max_iters }
    }

    pub fn cpa(&self) -> SolverConfig {
        SolverConfig {
            tau: self.cpa_tau,
            sigma: self.cpa_sigma,
            rho: self.rho,
            lambda: self.lambda,
            max_iters: self.max_iters,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    pub sample_rate_hz: u32,
    pub original_len: usize,
    pub padded_len: usize,
    /// Gain applied by peak normalization before acquisition.
    pub normalization_gain: f64,
    pub k: usize,
    pub coarse_bits: u32,
    pub fine_bits: u32,
    /// Observation files, relative to the manifest's directory.
    pub y1: PathBuf,
    pub y2: PathBuf,
    pub reference: Option<PathBuf>,
    pub filter: FilterRecord,
    pub frame: FrameParams,
    pub solver: SolverRecord,
}

pub fn taps_sha256(filter: &FirFilter) -> String {
    let mut hasher = Sha256::new();
    for t in filter.taps() {
        hasher.update(t.to_le_bytes());
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl FilterRecord {
    pub fn new(params: FilterParams, filter: &FirFilter) -> Self {
        Self { num_taps: params.num_taps, beta: params.beta, l1_norm: filter.l1_norm(), taps_sha256: taps_sha256(filter) }
    }

    pub fn params(&self) -> FilterParams {
        FilterParams { num_taps: self.num_taps, beta: self.beta }
    }

    /// Redesigns the filter and checks it against the recorded hash.
    pub fn rebuild(&self, k: usize) -> Result<FirFilter> {
        let filter = self.params().design(k)?;
        let hash = taps_sha256(&filter);
        if hash != self.taps_sha256 {
            return Err(Error::Manifest(format!(
                "filter taps hash {hash} differs from recorded {}",
                self.taps_sha256
            )));
        }
        Ok(filter)
    }
}

impl Manifest {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }

    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_toml()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let m = Self::from_toml(&text).map_err(|e| Error::Parse { path: path.to_path_buf(), detail: e.to_string() })?;
        if m.version != MANIFEST_VERSION {
            return Err(Error::Manifest(format!("unsupported manifest version {}", m.version)));
        }
        Ok(m)
    }
}
