//! Real-valued, uniformly sampled signals.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite, non-empty sequence of samples with its sampling rate.
///
/// Amplitudes are dimensionless with nominal range `[-1, 1)`; values outside
/// the range are allowed (quantizers saturate them).
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: u32,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("signal must contain at least one sample"));
        }
        if sample_rate_hz == 0 {
            return Err(Error::InvalidInput("sample rate must be positive"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidInput("signal samples must be finite"));
        }
        Ok(Self { samples, sample_rate_hz })
    }

    /// All-zero signal of length `len`.
    pub fn zeros(len: usize, sample_rate_hz: u32) -> Result<Self> {
        Self::new(alloc::vec![0.0; len], sample_rate_hz)
    }

    /// Wraps samples produced by an operator that preserves finiteness.
    pub(crate) fn from_raw(samples: Vec<f64>, sample_rate_hz: u32) -> Self {
        debug_assert!(!samples.is_empty());
        Self { samples, sample_rate_hz }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Appends the fewest zeros that make the length a multiple of `multiple`.
    pub fn pad_to_multiple(&self, multiple: usize) -> Result<Padded> {
        if multiple == 0 {
            return Err(Error::InvalidParameter("padding multiple must be at least 1"));
        }
        let original_len = self.len();
        let padded_len = original_len.div_ceil(multiple) * multiple;
        let mut samples = self.samples.clone();
        samples.resize(padded_len, 0.0);
        Ok(Padded {
            signal: Self::from_raw(samples, self.sample_rate_hz),
            original_len,
        })
    }
}

/// A zero-padded signal that remembers its length before padding.
#[derive(Debug, Clone, PartialEq)]
pub struct Padded {
    pub signal: Signal,
    pub original_len: usize,
}

impl Padded {
    /// Cuts `x` (any signal on the padded grid) back to the original length.
    pub fn truncate(&self, x: &Signal) -> Result<Signal> {
        if x.len() != self.signal.len() {
            return Err(Error::InvalidLength { expected: self.signal.len(), actual: x.len() });
        }
        Ok(Signal::from_raw(x.samples[..self.original_len].to_vec(), x.sample_rate_hz))
    }
}

/// Real inner product.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}
