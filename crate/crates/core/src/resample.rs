//! The decimator `D_k` (keep every `k`-th sample) and its adjoint (zero insertion).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Downsampler {
    factor: usize,
}

impl Downsampler {
    pub fn new(factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidParameter("downsampling factor must be at least 1"));
        }
        Ok(Self { factor })
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    /// `out[i] = x[i·k]`. The length of `x` must be a multiple of `k`.
    pub fn downsample(&self, x: &Signal) -> Result<Signal> {
        if x.len() % self.factor != 0 {
            return Err(Error::NotMultiple { len: x.len(), factor: self.factor });
        }
        let rate = (x.sample_rate_hz() / self.factor as u32).max(1);
        let out = x.samples().iter().step_by(self.factor).copied().collect();
        Ok(Signal::from_raw(out, rate))
    }

    /// Zero insertion: `out[i·k] = y[i]`, zeros elsewhere; `out_len` must equal `k·len(y)`.
    ///
    /// Takes a raw slice so that the empty input is representable.
    pub fn upsample_adjoint(&self, y: &[f64], out_len: usize) -> Result<Vec<f64>> {
        let expected = y.len() * self.factor;
        if out_len != expected {
            return Err(Error::InvalidLength { expected, actual: out_len });
        }
        let mut out = vec![0.0; out_len];
        self.upsample_adjoint_into(y, &mut out);
        Ok(out)
    }

    pub(crate) fn downsample_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), out.len() * self.factor);
        for (o, s) in out.iter_mut().zip(x.iter().step_by(self.factor)) {
            *o = *s;
        }
    }

    pub(crate) fn upsample_adjoint_into(&self, y: &[f64], out: &mut [f64]) {
        debug_assert_eq!(out.len(), y.len() * self.factor);
        out.fill(0.0);
        for (chunk, v) in out.chunks_exact_mut(self.factor).zip(y) {
            chunk[0] = *v;
        }
    }

    pub fn upsample_adjoint_signal(&self, y: &Signal) -> Signal {
        let mut out = vec![0.0; y.len() * self.factor];
        self.upsample_adjoint_into(y.samples(), &mut out);
        Signal::from_raw(out, y.sample_rate_hz().saturating_mul(self.factor as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_every_kth_sample() {
        let d = Downsampler::new(4).unwrap();
        let x = Signal::new((1..=8).map(f64::from).collect(), 32).unwrap();
        let y = d.downsample(&x).unwrap();
        assert_eq!(y.samples(), &[1.0, 5.0]);
        assert_eq!(y.sample_rate_hz(), 8);
    }

    #[test]
    fn factor_one_is_identity() {
        let d = Downsampler::new(1).unwrap();
        let x = Signal::new(vec![0.3, -0.1, 0.7], 3).unwrap();
        assert_eq!(d.downsample(&x).unwrap(), x);
    }

    #[test]
    fn rejects_indivisible_length_and_zero_factor() {
        let d = Downsampler::new(2).unwrap();
        let x = Signal::new(vec![0.1, 0.2, 0.3], 3).unwrap();
        assert_eq!(d.downsample(&x), Err(Error::NotMultiple { len: 3, factor: 2 }));
        assert!(Downsampler::new(0).is_err());
    }

    #[test]
    fn zero_insertion() {
        let d = Downsampler::new(4).unwrap();
        assert_eq!(d.upsample_adjoint(&[1.0, 5.0], 8).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0]);
        assert_eq!(d.upsample_adjoint(&[], 0).unwrap(), Vec::<f64>::new());
        assert!(d.upsample_adjoint(&[1.0], 5).is_err());
    }

    #[test]
    fn down_after_up_is_identity() {
        let d = Downsampler::new(3).unwrap();
        let y = Signal::new(vec![0.25, -0.5, 0.125], 10).unwrap();
        let back = d.downsample(&d.upsample_adjoint_signal(&y)).unwrap();
        assert_eq!(back.samples(), y.samples());
    }
}
