//! The anti-aliasing filter `B` as a circular FIR convolution, its adjoint,
//! and a Kaiser-windowed-sinc low-pass design.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::error::{Error, Result};
use crate::signal::Signal;

pub const DEFAULT_NUM_TAPS: usize = 129;
pub const DEFAULT_KAISER_BETA: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
    l1_norm: f64,
}

impl FirFilter {
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidInput("filter needs at least one tap"));
        }
        if taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("filter taps must be finite"));
        }
        let l1_norm = taps.iter().map(|t| t.abs()).sum();
        Ok(Self { taps, l1_norm })
    }

    /// The unit impulse, i.e. no filtering.
    pub fn identity() -> Self {
        Self { taps: vec![1.0], l1_norm: 1.0 }
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// `‖b‖₁`, an upper bound on the operator norm of the circular convolution.
    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// Circular convolution `y[n] = Σ_i b[i] x[(n - i) mod L]`.
    pub fn apply(&self, x: &Signal) -> Signal {
        let mut out = vec![0.0; x.len()];
        self.apply_into(x.samples(), &mut out);
        Signal::from_raw(out, x.sample_rate_hz())
    }

    /// Circular correlation `y[n] = Σ_i b[i] x[(n + i) mod L]`, the adjoint of [`apply`](Self::apply).
    pub fn apply_adjoint(&self, x: &Signal) -> Signal {
        let mut out = vec![0.0; x.len()];
        self.apply_adjoint_into(x.samples(), &mut out);
        Signal::from_raw(out, x.sample_rate_hz())
    }

    pub(crate) fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let len = x.len();
        debug_assert_eq!(len, out.len());
        out.fill(0.0);
        for (i, &b) in self.taps.iter().enumerate() {
            let shift = i % len;
            let (head, tail) = out.split_at_mut(shift);
            for (o, s) in tail.iter_mut().zip(&x[..len - shift]) {
                *o += b * s;
            }
            for (o, s) in head.iter_mut().zip(&x[len - shift..]) {
                *o += b * s;
            }
        }
    }

    pub(crate) fn apply_adjoint_into(&self, x: &[f64], out: &mut [f64]) {
        let len = x.len();
        debug_assert_eq!(len, out.len());
        out.fill(0.0);
        for (i, &b) in self.taps.iter().enumerate() {
            let shift = i % len;
            let (head, tail) = out.split_at_mut(len - shift);
            for (o, s) in head.iter_mut().zip(&x[shift..]) {
                *o += b * s;
            }
            for (o, s) in tail.iter_mut().zip(&x[..shift]) {
                *o += b * s;
            }
        }
    }

    /// Writes the taps one per line in shortest round-trip decimal form.
    pub fn write_csv<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        for t in &self.taps {
            writeln!(out, "{t:?}")?;
        }
        Ok(())
    }
}

/// Linear-phase low-pass with cutoff at `1/(2k)` cycles per sample
/// (`π/k` rad), Kaiser window of shape `beta`, scaled to unit DC gain.
pub fn design_lowpass(k: usize, num_taps: usize, beta: f64) -> Result<FirFilter> {
    if k < 2 {
        return Err(Error::InvalidParameter("low-pass design needs a decimation factor of at least 2"));
    }
    if num_taps < 3 || num_taps % 2 == 0 {
        return Err(Error::InvalidParameter("number of taps must be odd and at least 3"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter("Kaiser beta must be finite and non-negative"));
    }
    let cutoff = 0.5 / k as f64;
    let center = (num_taps / 2) as isize;
    let window = kaiser(num_taps, beta);
    let mut taps: Vec<f64> = (0..num_taps)
        .map(|n| {
            let t = (n as isize - center) as f64;
            2.0 * cutoff * sinc(2.0 * cutoff * t) * window[n]
        })
        .collect();
    let dc: f64 = taps.iter().sum();
    for t in &mut taps {
        *t /= dc;
    }
    // Enforce exact symmetry after the floating-point scaling.
    for n in 0..num_taps / 2 {
        let m = num_taps - 1 - n;
        let avg = 0.5 * (taps[n] + taps[m]);
        taps[n] = avg;
        taps[m] = avg;
    }
    FirFilter::new(taps)
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        libm::sin(PI * x) / (PI * x)
    }
}

fn kaiser(len: usize, beta: f64) -> Vec<f64> {
    let denom = bessel_i0(beta);
    let span = (len - 1) as f64;
    (0..len)
        .map(|n| {
            let r = 2.0 * n as f64 / span - 1.0;
            bessel_i0(beta * libm::sqrt((1.0 - r * r).max(0.0))) / denom
        })
        .collect()
}

/// Modified Bessel function of the first kind, order zero (power series).
fn bessel_i0(x: f64) -> f64 {
    let quarter_sq = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > 1e-17 * sum {
        term *= quarter_sq / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::dot;
    use alloc::string::String;

    fn sig(v: &[f64]) -> Signal {
        Signal::new(v.to_vec(), 4).unwrap()
    }

    #[test]
    fn identity_filter_passes_through() {
        let b = FirFilter::new(vec![1.0]).unwrap();
        assert_eq!(b.apply(&sig(&[1.0, 0.0, 0.0, 0.0])).samples(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(b.apply_adjoint(&sig(&[1.0, 0.0, 0.0, 0.0])).samples(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn impulse_response_and_wraparound() {
        let b = FirFilter::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(b.apply(&sig(&[1.0, 0.0, 0.0, 0.0])).samples(), &[0.5, 0.5, 0.0, 0.0]);
        assert_eq!(b.apply(&sig(&[0.0, 0.0, 0.0, 1.0])).samples(), &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn hand_computed_adjoint_pairing() {
        let b = FirFilter::new(vec![0.5, 0.5]).unwrap();
        let e1 = sig(&[1.0, 0.0, 0.0, 0.0]);
        let lhs = dot(b.apply(&e1).samples(), e1.samples());
        let rhs = dot(e1.samples(), b.apply_adjoint(&e1).samples());
        assert_eq!(lhs, 0.5);
        assert_eq!(rhs, 0.5);
    }

    #[test]
    fn taps_longer_than_signal_alias_circularly() {
        let b = FirFilter::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        // tap 5 wraps to shift 1 on a length-4 signal
        assert_eq!(b.apply(&sig(&[1.0, 0.0, 0.0, 0.0])).samples(), &[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(b.apply_adjoint(&sig(&[0.0, 1.0, 0.0, 0.0])).samples(), &[2.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_taps() {
        assert!(FirFilter::new(vec![]).is_err());
        assert!(FirFilter::new(vec![f64::NAN]).is_err());
        let b = FirFilter::new(vec![0.5, -0.7]).unwrap();
        assert!((b.l1_norm() - 1.2).abs() < 1e-15);
    }

    #[test]
    fn lowpass_design_parameters() {
        assert!(design_lowpass(4, 128, 8.0).is_err());
        assert!(design_lowpass(4, 1, 8.0).is_err());
        assert!(design_lowpass(1, 129, 8.0).is_err());
        assert!(design_lowpass(4, 129, -1.0).is_err());
        let b = design_lowpass(4, 129, 8.0).unwrap();
        let taps = b.taps();
        assert_eq!(taps.len(), 129);
        for i in 0..taps.len() {
            assert_eq!(taps[i], taps[taps.len() - 1 - i]);
        }
        assert!((taps.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bessel_i0_matches_reference_values() {
        // Abramowitz & Stegun table 9.8
        assert!((bessel_i0(0.0) - 1.0).abs() < 1e-15);
        assert!((bessel_i0(1.0) - 1.266_065_877_752_008).abs() < 1e-14);
        assert!((bessel_i0(8.0) - 427.564_115_721_804_7).abs() < 1e-9);
    }

    #[test]
    fn csv_export_round_trips() {
        let b = design_lowpass(4, 9, 5.0).unwrap();
        let mut out = String::new();
        b.write_csv(&mut out).unwrap();
        let parsed: Vec<f64> = out.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(parsed, b.taps());
    }
}
