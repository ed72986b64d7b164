//! Mono PCM WAV reading and writing.
//!
//! Integer samples of `b` bits map to amplitudes by `s / 2^(b−1)`, so a
//! 16-bit `0x7FFF` reads as `32767/32768` and `-32768` reads as `-1`.
//! Writing inverts the mapping with rounding to nearest and saturation to
//! `[−2^(b−1), 2^(b−1) − 1]`. 32-bit float samples are taken as-is.
//! Multichannel files are reduced to their first channel.

use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};
use pardeq_core::Signal;

use crate::error::{Error, Result};

/// On-disk sample encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavFormat {
    Int16,
    Int24,
    /// Exact for observations of quantizers up to 31 bits.
    Int32,
    Float32,
}

impl WavFormat {
    pub fn from_bits(bits: u16) -> Option<Self> {
        match bits {
            16 => Some(Self::Int16),
            24 => Some(Self::Int24),
            32 => Some(Self::Int32),
            _ => None,
        }
    }

    fn spec(self, sample_rate: u32) -> WavSpec {
        let (bits_per_sample, sample_format) = match self {
            Self::Int16 => (16, SampleFormat::Int),
            Self::Int24 => (24, SampleFormat::Int),
            Self::Int32 => (32, SampleFormat::Int),
            Self::Float32 => (32, SampleFormat::Float),
        };
        WavSpec { channels: 1, sample_rate, bits_per_sample, sample_format }
    }
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<Signal> {
    let path = path.as_ref();
    let wav_err = |source| Error::Wav { path: path.to_path_buf(), source };
    let mut reader = WavReader::open(path).map_err(wav_err)?;
    let spec = reader.spec();
    let channels = spec.channels as usize;
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, bits @ (16 | 24 | 32)) => {
            let scale = 1.0 / (1u64 << (bits - 1)) as f64;
            reader
                .samples::<i32>()
                .step_by(channels)
                .map(|s| s.map(|v| v as f64 * scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(wav_err)?
        }
        (SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .step_by(channels)
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()
            .map_err(wav_err)?,
        (format, bits) => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                detail: format!("{bits}-bit {format:?} samples (expected 16/24/32-bit PCM or 32-bit float)"),
            })
        }
    };
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(Error::UnsupportedFormat { path: path.to_path_buf(), detail: "non-finite float samples".into() });
    }
    Ok(Signal::new(samples, spec.sample_rate)?)
}

pub fn save_wav(path: impl AsRef<Path>, x: &Signal, format: WavFormat) -> Result<()> {
    let path = path.as_ref();
    let wav_err = |source| Error::Wav { path: path.to_path_buf(), source };
    let mut writer = WavWriter::create(path, format.spec(x.sample_rate_hz())).map_err(wav_err)?;
    match format {
        WavFormat::Float32 => {
            for &s in x.samples() {
                writer.write_sample(s as f32).map_err(wav_err)?;
            }
        }
        WavFormat::Int16 | WavFormat::Int24 | WavFormat::Int32 => {
            let bits = format.spec(1).bits_per_sample;
            for &s in x.samples() {
                writer.write_sample(to_int(s, bits)).map_err(wav_err)?;
            }
        }
    }
    writer.finalize().map_err(wav_err)
}

fn to_int(x: f64, bits: u16) -> i32 {
    let full = (1i64 << (bits - 1)) as f64;
    (x * full).round().clamp(-full, full - 1.0) as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_mapping() {
        assert_eq!(to_int(32767.0 / 32768.0, 16), 0x7FFF);
        assert_eq!(to_int(1.0, 16), 0x7FFF);
        assert_eq!(to_int(-1.0, 16), -32768);
        assert_eq!(to_int(-2.0, 24), -(1 << 23));
        assert_eq!(to_int(0.5, 32), 1 << 30);
        assert_eq!(to_int(1.0, 32), i32::MAX);
    }
}
