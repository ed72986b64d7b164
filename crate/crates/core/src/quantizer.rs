//! Mid-riser uniform quantization on `[-1, 1)` and the consistency boxes it induces.
//!
//! A `w`-bit quantizer has step `Δ = 2^(1−w)` and reproduction levels
//! `Δ(i + ½)`, saturated to `[−1 + Δ/2, 1 − Δ/2]`. Zero is a decision
//! boundary; a sample lying exactly on a boundary goes to the upper cell.
//!
//! The cell of an observed level `v` is `[v − Δ/2, v + Δ/2]`. The two
//! saturated cells are closed off at the range edges `±1` so that every
//! consistency set is a bounded box.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::signal::Signal;

/// Tolerance used when checking that an observation sits on the level grid.
pub const GRID_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantizer {
    bits: u32,
    step: f64,
}

impl Quantizer {
    pub fn new(bits: u32) -> Result<Self> {
        if !(1..=32).contains(&bits) {
            return Err(Error::InvalidParameter("quantizer bit depth must lie in 1..=32"));
        }
        let step = libm::ldexp(1.0, 1 - bits as i32);
        Ok(Self { bits, step })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `Δ = 2^(1−w)`.
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn max_level(&self) -> f64 {
        1.0 - 0.5 * self.step
    }

    pub fn quantize_sample(&self, x: f64) -> f64 {
        let v = self.step * (libm::floor(x / self.step) + 0.5);
        v.clamp(-self.max_level(), self.max_level())
    }

    pub fn quantize(&self, x: &Signal) -> Signal {
        let out = x.samples().iter().map(|&s| self.quantize_sample(s)).collect();
        Signal::from_raw(out, x.sample_rate_hz())
    }

    /// True when `y` is a reproduction level (within [`GRID_TOLERANCE`]).
    pub fn is_level(&self, y: f64) -> bool {
        if !y.is_finite() || y.abs() > self.max_level() + GRID_TOLERANCE {
            return false;
        }
        let index = y / self.step - 0.5;
        (index - libm::round(index)).abs() * self.step <= GRID_TOLERANCE
    }

    /// Per-sample cells that quantize to the observation `y`.
    pub fn consistency_set(&self, y: &Signal) -> Result<ConsistencySet> {
        self.consistency_set_of(y.samples())
    }

    pub fn consistency_set_of(&self, y: &[f64]) -> Result<ConsistencySet> {
        let half = 0.5 * self.step;
        let top = self.max_level();
        let mut lower = Vec::with_capacity(y.len());
        let mut upper = Vec::with_capacity(y.len());
        for (index, &value) in y.iter().enumerate() {
            if !self.is_level(value) {
                return Err(Error::InvalidObservation { index, value, bits: self.bits });
            }
            // snap to the exact level to undo storage round-off
            let level = self.step * (libm::round(value / self.step - 0.5) + 0.5);
            let lo = if level <= -top { -1.0 } else { level - half };
            let hi = if level >= top { 1.0 } else { level + half };
            lower.push(lo);
            upper.push(hi);
        }
        Ok(ConsistencySet { lower, upper })
    }
}

/// A product of closed intervals `[lower[i], upper[i]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencySet {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl ConsistencySet {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidLength { expected: lower.len(), actual: upper.len() });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(Error::InvalidInput("box bounds must satisfy lower <= upper"));
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` repeated `len` times.
    pub fn uniform(len: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(alloc::vec![lower; len], alloc::vec![upper; len])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Euclidean projection: per-sample clamp.
    pub fn project(&self, x: &Signal) -> Result<Signal> {
        if x.len() != self.len() {
            return Err(Error::InvalidLength { expected: self.len(), actual: x.len() });
        }
        let mut out = x.samples().to_vec();
        self.project_in_place(&mut out);
        Ok(Signal::from_raw(out, x.sample_rate_hz()))
    }

    pub(crate) fn project_in_place(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.max(*lo).min(*hi);
        }
    }

    /// Largest distance of any sample of `x` from its interval (0 when feasible).
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        x.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((v, lo), hi)| (lo - v).max(v - hi).max(0.0))
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.len() && self.max_violation(x) == 0.0
    }
}
