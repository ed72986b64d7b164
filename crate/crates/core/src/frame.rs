//! Painless-case Gabor frame normalized to a Parseval tight frame.
//!
//! Coefficients are `c[m, j] = Σ_n x[n] g̃[n − j·a] e^{−2πi m n / M}` with
//! indices taken modulo the signal length `L`. With the tight window
//! `g̃[n] = g[n] / sqrt(M Σ_j g[n − j·a]²)` the analysis operator satisfies
//! `A*A = Id`, so synthesis is exactly the adjoint.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::Fft;
use crate::signal::Signal;

pub const DEFAULT_WINDOW_LEN: usize = 2048;
pub const DEFAULT_HOP: usize = 512;
pub const DEFAULT_CHANNELS: usize = 2048;

/// Prototype window shape before tight normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowKind {
    /// `sin²(π(n + ½)/W)`; strictly positive on its support.
    #[default]
    Hann,
    Rectangular,
}

impl WindowKind {
    pub fn samples(self, len: usize) -> Vec<f64> {
        match self {
            WindowKind::Hann => (0..len)
                .map(|n| {
                    let s = libm::sin(PI * (n as f64 + 0.5) / len as f64);
                    s * s
                })
                .collect(),
            WindowKind::Rectangular => vec![1.0; len],
        }
    }
}

#[derive(Debug, Clone)]
pub struct TfFrame {
    kind: WindowKind,
    window: Vec<f64>,
    tight_window: Vec<f64>,
    hop: usize,
    num_channels: usize,
    signal_len: usize,
    fft: Fft,
}

impl TfFrame {
    /// Hann-windowed tight frame.
    pub fn new(window_len: usize, hop: usize, num_channels: usize, signal_len: usize) -> Result<Self> {
        Self::with_window(WindowKind::Hann, window_len, hop, num_channels, signal_len)
    }

    pub fn with_window(
        kind: WindowKind,
        window_len: usize,
        hop: usize,
        num_channels: usize,
        signal_len: usize,
    ) -> Result<Self> {
        if window_len == 0 || hop == 0 || num_channels == 0 || signal_len == 0 {
            return Err(Error::InvalidParameter("frame parameters must be positive"));
        }
        if window_len > num_channels {
            return Err(Error::InvalidParameter("window length must not exceed the channel count"));
        }
        if hop > window_len {
            return Err(Error::InvalidParameter("hop must not exceed the window length"));
        }
        if window_len > signal_len {
            return Err(Error::InvalidParameter("window length must not exceed the signal length"));
        }
        if signal_len % hop != 0 || signal_len % num_channels != 0 {
            return Err(Error::InvalidParameter(
                "signal length must be a multiple of both the hop and the channel count",
            ));
        }
        let window = kind.samples(window_len);
        let mut diag = vec![0.0; signal_len];
        for j in 0..signal_len / hop {
            let start = j * hop;
            for (i, g) in window.iter().enumerate() {
                diag[(start + i) % signal_len] += g * g;
            }
        }
        // The diagonal is hop-periodic, so its first period determines the normalization.
        let mut tight_window = Vec::with_capacity(window_len);
        for (i, g) in window.iter().enumerate() {
            let d = diag[i % signal_len] * num_channels as f64;
            if d <= 0.0 {
                return Err(Error::InvalidParameter("window leaves part of the signal uncovered"));
            }
            tight_window.push(g / libm::sqrt(d));
        }
        if diag.iter().any(|&d| d <= 0.0) {
            return Err(Error::InvalidParameter("window leaves part of the signal uncovered"));
        }
        Ok(Self {
            kind,
            window,
            tight_window,
            hop,
            num_channels,
            signal_len,
            fft: Fft::new(num_channels),
        })
    }

    /// The frame whose analysis is the identity embedding `ℝ^L → ℂ^L`.
    pub fn identity(signal_len: usize) -> Result<Self> {
        Self::with_window(WindowKind::Rectangular, 1, 1, 1, signal_len)
    }

    pub fn window_kind(&self) -> WindowKind {
        self.kind
    }

    pub fn window(&self) -> &[f64] {
        &self.window
    }

    pub fn tight_window(&self) -> &[f64] {
        &self.tight_window
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    pub fn hop(&self) -> usize {
        self.hop
    }

    pub fn num_channels(&self) -> usize {
        self.num_channels
    }

    pub fn signal_len(&self) -> usize {
        self.signal_len
    }

    pub fn num_frames(&self) -> usize {
        self.signal_len / self.hop
    }

    /// `P = M · L / a`.
    pub fn num_coefficients(&self) -> usize {
        self.num_channels * self.num_frames()
    }

    pub fn zero_coefficients(&self) -> Coefficients {
        Coefficients {
            data: vec![Complex64::new(0.0, 0.0); self.num_coefficients()],
            num_channels: self.num_channels,
        }
    }

    pub fn analyze(&self, x: &Signal) -> Result<Coefficients> {
        if x.len() != self.signal_len {
            return Err(Error::InvalidLength { expected: self.signal_len, actual: x.len() });
        }
        let mut c = self.zero_coefficients();
        self.analyze_into(x.samples(), &mut c.data);
        Ok(c)
    }

    pub fn synthesize(&self, c: &Coefficients) -> Result<Signal> {
        if c.len() != self.num_coefficients() || c.num_channels != self.num_channels {
            return Err(Error::InvalidLength { expected: self.num_coefficients(), actual: c.len() });
        }
        let mut out = vec![0.0; self.signal_len];
        self.synthesize_into(&c.data, &mut out);
        Ok(Signal::from_raw(out, 1))
    }

    /// Synthesis keeping the sampling rate of a reference signal.
    pub fn synthesize_like(&self, c: &Coefficients, like: &Signal) -> Result<Signal> {
        let s = self.synthesize(c)?;
        Ok(Signal::from_raw(s.into_samples(), like.sample_rate_hz()))
    }

    pub(crate) fn analyze_into(&self, x: &[f64], out: &mut [Complex64]) {
        let len = self.signal_len;
        let m = self.num_channels;
        for (j, column) in out.chunks_exact_mut(m).enumerate() {
            column.fill(Complex64::new(0.0, 0.0));
            let start = j * self.hop;
            // window length ≤ M, so every residue n mod M is hit at most once
            for (i, g) in self.tight_window.iter().enumerate() {
                let n = (start + i) % len;
                column[n % m] = Complex64::new(x[n] * g, 0.0);
            }
            self.fft.forward(column);
        }
    }

    pub(crate) fn synthesize_into(&self, c: &[Complex64], out: &mut [f64]) {
        let len = self.signal_len;
        let m = self.num_channels;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        out.fill(0.0);
        for (j, column) in c.chunks_exact(m).enumerate() {
            buf.copy_from_slice(column);
            self.fft.inverse(&mut buf);
            let start = j * self.hop;
            for (i, g) in self.tight_window.iter().enumerate() {
                let n = (start + i) % len;
                out[n] += g * buf[n % m].re;
            }
        }
    }
}

/// Frame coefficients, stored frame by frame (`index = j·M + m`).
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    data: Vec<Complex64>,
    num_channels: usize,
}

impl Coefficients {
    pub fn from_vec(data: Vec<Complex64>, num_channels: usize) -> Result<Self> {
        if num_channels == 0 || data.len() % num_channels != 0 {
            return Err(Error::InvalidParameter("coefficient count must be a multiple of the channel count"));
        }
        Ok(Self { data, num_channels })
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn num_channels(&self) -> usize {
        self.num_channels
    }

    /// Coefficient of channel `m` in time frame `j`.
    pub fn get(&self, m: usize, j: usize) -> Complex64 {
        self.data[j * self.num_channels + m]
    }

    pub fn l1_norm(&self) -> f64 {
        l1_norm(&self.data)
    }

    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v.norm_sqr()).sum())
    }

    /// Real part of the Hermitian inner product, the pairing under which
    /// synthesis is the adjoint of analysis.
    pub fn real_dot(&self, other: &Coefficients) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
    }
}

pub(crate) fn l1_norm(c: &[Complex64]) -> f64 {
    c.iter().map(|v| libm::hypot(v.re, v.im)).sum()
}
