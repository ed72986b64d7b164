//! Shared setup for simulation, reconstruction and evaluation.

use pardeq_core::filter::{design_lowpass, DEFAULT_KAISER_BETA, DEFAULT_NUM_TAPS};
use pardeq_core::frame::{DEFAULT_CHANNELS, DEFAULT_HOP, DEFAULT_WINDOW_LEN};
use pardeq_core::{
    cpa_solve, cva_solve, sdr, simulate_acquisition, AcquisitionModel, FirFilter, Observations, Padded,
    Signal, SolverConfig, SolverRun, TfFrame, WindowKind,
};
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterParams {
    pub num_taps: usize,
    pub beta: f64,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self { num_taps: DEFAULT_NUM_TAPS, beta: DEFAULT_KAISER_BETA }
    }
}

impl FilterParams {
    /// Low-pass for factor `k`; no filtering when `k = 1`.
    pub fn design(&self, k: usize) -> Result<FirFilter> {
        if k == 1 {
            return Ok(FirFilter::identity());
        }
        Ok(design_lowpass(k, self.num_taps, self.beta)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    #[default]
    Hann,
    Rectangular,
}

impl From<Window> for WindowKind {
    fn from(w: Window) -> Self {
        match w {
            Window::Hann => WindowKind::Hann,
            Window::Rectangular => WindowKind::Rectangular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameParams {
    pub window: Window,
    pub window_len: usize,
    pub hop: usize,
    pub channels: usize,
}

impl Default for FrameParams {
    fn default() -> Self {
        Self { window: Window::Hann, window_len: DEFAULT_WINDOW_LEN, hop: DEFAULT_HOP, channels: DEFAULT_CHANNELS }
    }
}

impl FrameParams {
    pub fn build(&self, signal_len: usize) -> Result<TfFrame> {
        Ok(TfFrame::with_window(self.window.into(), self.window_len, self.hop, self.channels, signal_len)?)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Length granularity a padded signal must respect for factor `k` and the frame.
pub fn padding_multiple(k: usize, frame: &FrameParams) -> usize {
    lcm(lcm(k.max(1), frame.hop.max(1)), frame.channels.max(1))
}

/// A signal padded to the working length, with the frame and model built for it.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub padded: Padded,
    pub frame: TfFrame,
    pub model: AcquisitionModel,
}

pub fn prepare(
    x: &Signal,
    k: usize,
    filter: &FilterParams,
    frame: &FrameParams,
    fine_bits: u32,
    coarse_bits: u32,
) -> Result<Prepared> {
    let padded = x.pad_to_multiple(padding_multiple(k, frame))?;
    let frame = frame.build(padded.signal.len())?;
    let model = AcquisitionModel::new(filter.design(k)?, k, fine_bits, coarse_bits)?;
    Ok(Prepared { padded, frame, model })
}

impl Prepared {
    pub fn observe(&self) -> Result<Observations> {
        Ok(simulate_acquisition(&self.padded.signal, &self.model)?)
    }
}

/// SDRs of one signal at one bit-depth pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub sdr_y2: f64,
    pub cpa: SolverRun,
    pub cva: SolverRun,
}

impl Evaluation {
    pub fn sdr_cpa(&self) -> f64 {
        self.cpa.best_sdr().unwrap_or(f64::NAN)
    }

    pub fn sdr_cva(&self) -> f64 {
        self.cva.best_sdr().unwrap_or(f64::NAN)
    }
}

/// Simulates both branches for the (already normalized) `x`, runs both
/// solvers in evaluation mode and scores against `x`.
pub fn evaluate(prepared: &Prepared, x: &Signal, cva_cfg: &SolverConfig, cpa_cfg: &SolverConfig) -> Result<Evaluation> {
    let obs = prepared.observe()?;
    let y2 = prepared.padded.truncate(&obs.y2)?;
    let sdr_y2 = sdr(x, &y2)?;
    let cpa = cpa_solve(&obs.y2, &prepared.model.coarse, &prepared.frame, cpa_cfg, Some(x))?;
    let cva = cva_solve(&obs.y1, &obs.y2, &prepared.model, &prepared.frame, cva_cfg, Some(x))?;
    Ok(Evaluation { sdr_y2, cpa, cva })
}
