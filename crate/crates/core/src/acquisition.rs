//! The two-branch acquisition: `y1 = Q_fine(D_k B x)` and `y2 = Q_coarse(x)`.

use crate::error::Result;
use crate::filter::FirFilter;
use crate::quantizer::Quantizer;
use crate::resample::Downsampler;
use crate::signal::Signal;

#[derive(Debug, Clone, PartialEq)]
pub struct AcquisitionModel {
    pub filter: FirFilter,
    pub downsampler: Downsampler,
    pub fine: Quantizer,
    pub coarse: Quantizer,
}

/// The two quantized observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Observations {
    /// Low-rate, finely quantized branch (length `L/k`).
    pub y1: Signal,
    /// Full-rate, coarsely quantized branch (length `L`).
    pub y2: Signal,
}

impl AcquisitionModel {
    pub fn new(filter: FirFilter, factor: usize, fine_bits: u32, coarse_bits: u32) -> Result<Self> {
        Ok(Self {
            filter,
            downsampler: Downsampler::new(factor)?,
            fine: Quantizer::new(fine_bits)?,
            coarse: Quantizer::new(coarse_bits)?,
        })
    }

    pub fn factor(&self) -> usize {
        self.downsampler.factor()
    }

    /// The usual configuration has the low-rate branch at least as fine as the full-rate one.
    pub fn is_standard(&self) -> bool {
        self.fine.bits() >= self.coarse.bits()
    }

    /// `D_k B x`, the noiseless low-rate branch.
    pub fn low_rate(&self, x: &Signal) -> Result<Signal> {
        self.downsampler.downsample(&self.filter.apply(x))
    }
}

/// Runs both branches on `x`, whose length must be a multiple of `k`.
pub fn simulate_acquisition(x: &Signal, model: &AcquisitionModel) -> Result<Observations> {
    let y1 = model.fine.quantize(&model.low_rate(x)?);
    let y2 = model.coarse.quantize(x);
    Ok(Observations { y1, y2 })
}
