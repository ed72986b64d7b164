use crate::error::{Error, Result};
use crate::signal::{norm2, Signal};

/// Peak magnitude after normalization, just inside `[-1, 1)`.
pub const PEAK_TARGET: f64 = 1.0 - 1.0 / 32768.0;

/// Scales `x` so that `max |x[i]| = 1 − 2⁻¹⁵`. Returns the scaled signal and the gain applied.
pub fn peak_normalize(x: &Signal) -> Result<(Signal, f64)> {
    let peak = x.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::InvalidInput("cannot peak-normalize an all-zero signal"));
    }
    let gain = PEAK_TARGET / peak;
    let out = x.samples().iter().map(|v| v * gain).collect();
    Ok((Signal::from_raw(out, x.sample_rate_hz()), gain))
}

/// Signal-to-distortion ratio `20 log10(‖x‖ / ‖x − x̂‖)` in dB; `+∞` for an exact match.
pub fn sdr(reference: &Signal, estimate: &Signal) -> Result<f64> {
    sdr_slices(reference.samples(), estimate.samples())
}

pub fn sdr_slices(reference: &[f64], estimate: &[f64]) -> Result<f64> {
    if reference.len() != estimate.len() {
        return Err(Error::InvalidLength { expected: reference.len(), actual: estimate.len() });
    }
    let signal = norm2(reference);
    if signal == 0.0 {
        return Err(Error::InvalidInput("SDR needs a nonzero reference"));
    }
    let noise = libm::sqrt(reference.iter().zip(estimate).map(|(a, b)| (a - b) * (a - b)).sum());
    if noise == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(20.0 * libm::log10(signal / noise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sdr_of_ten_percent_error_is_twenty_db() {
        let x = Signal::new(vec![1.0, 0.0], 1).unwrap();
        let y = Signal::new(vec![0.9, 0.0], 1).unwrap();
        assert!((sdr(&x, &y).unwrap() - 20.0).abs() < 1e-12);
        assert_eq!(sdr(&x, &x).unwrap(), f64::INFINITY);
    }

    #[test]
    fn sdr_errors() {
        let x = Signal::new(vec![1.0, 0.0], 1).unwrap();
        let z = Signal::new(vec![0.0, 0.0], 1).unwrap();
        assert!(sdr(&z, &x).is_err());
        assert!(sdr(&x, &Signal::new(vec![1.0], 1).unwrap()).is_err());
    }

    #[test]
    fn normalizes_peak() {
        let x = Signal::new(vec![0.5, -0.25], 1).unwrap();
        let (y, gain) = peak_normalize(&x).unwrap();
        assert_eq!(y.samples(), &[PEAK_TARGET, -PEAK_TARGET / 2.0]);
        assert_eq!(gain, 2.0 * PEAK_TARGET);
        let (z, _) = peak_normalize(&y).unwrap();
        for (a, b) in z.samples().iter().zip(y.samples()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(peak_normalize(&Signal::zeros(3, 1).unwrap()).is_err());
    }
}
