//! Unnormalized complex DFT of a fixed size.
//!
//! Power-of-two sizes use an iterative radix-2 transform; other sizes go
//! through Bluestein's chirp-z reformulation on a power-of-two grid.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub(crate) struct Fft {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Radix2(Radix2),
    Bluestein(Bluestein),
}

impl Fft {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "FFT size must be positive");
        let kind = if len.is_power_of_two() {
            Kind::Radix2(Radix2::new(len))
        } else {
            Kind::Bluestein(Bluestein::new(len))
        };
        Self { len, kind }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.len
    }

    /// In-place `X[m] = Σ_n x[n] e^{-2πi mn/N}`.
    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        match &self.kind {
            Kind::Radix2(r) => r.run(buf),
            Kind::Bluestein(b) => b.run(buf),
        }
    }

    /// In-place `x[n] = Σ_m X[m] e^{+2πi mn/N}` (no 1/N factor).
    pub fn inverse(&self, buf: &mut [Complex64]) {
        for v in buf.iter_mut() {
            *v = v.conj();
        }
        self.forward(buf);
        for v in buf.iter_mut() {
            *v = v.conj();
        }
    }
}

fn twiddle(k: usize, n: usize) -> Complex64 {
    let angle = -2.0 * PI * k as f64 / n as f64;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

#[derive(Debug, Clone)]
struct Radix2 {
    twiddles: Vec<Complex64>,
    bitrev: Vec<u32>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        let bits = len.trailing_zeros();
        let bitrev = (0..len as u32)
            .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (32 - bits) })
            .collect();
        let twiddles = (0..len / 2).map(|k| twiddle(k, len)).collect();
        Self { twiddles, bitrev }
    }

    fn run(&self, buf: &mut [Complex64]) {
        let n = buf.len();
        for (i, &j) in self.bitrev.iter().enumerate() {
            let j = j as usize;
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for block in buf.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let t = *b * self.twiddles[k * stride];
                    *b = *a - t;
                    *a += t;
                }
            }
            half *= 2;
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    inner: Radix2,
    chirp: Vec<Complex64>,
    kernel_hat: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let padded = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(padded);
        // chirp[n] = exp(-iπ n²/N), with n² reduced mod 2N to keep the angle small
        let chirp: Vec<Complex64> = (0..len)
            .map(|n| {
                let sq = (n as u128 * n as u128 % (2 * len as u128)) as f64;
                let angle = -PI * sq / len as f64;
                Complex64::new(libm::cos(angle), libm::sin(angle))
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); padded];
        kernel[0] = chirp[0].conj();
        for n in 1..len {
            kernel[n] = chirp[n].conj();
            kernel[padded - n] = chirp[n].conj();
        }
        inner.run(&mut kernel);
        Self { inner, chirp, kernel_hat: kernel }
    }

    fn run(&self, buf: &mut [Complex64]) {
        let padded = self.kernel_hat.len();
        let mut work = vec![Complex64::new(0.0, 0.0); padded];
        for ((w, x), c) in work.iter_mut().zip(buf.iter()).zip(&self.chirp) {
            *w = x * c;
        }
        self.inner.run(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel_hat) {
            *w = (*w * k).conj();
        }
        self.inner.run(&mut work);
        let scale = 1.0 / padded as f64;
        for ((x, w), c) in buf.iter_mut().zip(&work).zip(&self.chirp) {
            *x = w.conj() * scale * c;
        }
    }
}
