//! Seeded synthetic test signals that are sparse in time-frequency.
//!
//! Each signal is a sum of 5 to 20 decaying partials. A partial has a
//! log-uniform frequency, a random amplitude and phase, an onset in the
//! first half of the signal, a 5 ms linear attack and an exponential decay.
//! The result is peak-normalized.

use std::f64::consts::PI;

use pardeq_core::{peak_normalize, Signal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub seconds: f64,
    pub sample_rate_hz: u32,
    /// Lowest partial frequency.
    pub min_freq_hz: f64,
    /// Highest partial frequency, as a fraction of the sample rate.
    pub max_freq_ratio: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self { seconds: 2.0, sample_rate_hz: 16_000, min_freq_hz: 60.0, max_freq_ratio: 0.25 }
    }
}

pub fn synth_id(index: usize) -> String {
    format!("synth-{index:03}")
}

/// Signal number `index` of the family seeded by `seed`; independent of how many are generated.
pub fn synthesize(params: &SynthParams, seed: u64, index: usize) -> Result<Signal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let rate = f64::from(params.sample_rate_hz);
    let len = (params.seconds * rate).round().max(1.0) as usize;
    let max_freq = (params.max_freq_ratio * rate).max(params.min_freq_hz * 1.01);
    let (log_lo, log_hi) = (params.min_freq_hz.ln(), max_freq.ln());
    let attack = 0.005 * rate;

    let mut samples = vec![0.0; len];
    let partials = rng.gen_range(5..=20);
    for _ in 0..partials {
        let freq = rng.gen_range(log_lo..log_hi).exp();
        let amplitude = rng.gen_range(0.1..1.0);
        let phase = rng.gen_range(0.0..2.0 * PI);
        let onset = rng.gen_range(0..len.div_ceil(2));
        let decay = rng.gen_range(0.2..1.5) * rate;
        let omega = 2.0 * PI * freq / rate;
        for (n, s) in samples.iter_mut().enumerate().skip(onset) {
            let t = (n - onset) as f64;
            let envelope = (t / attack).min(1.0) * (-t / decay).exp();
            *s += amplitude * envelope * (omega * t + phase).sin();
        }
    }
    let (x, _) = peak_normalize(&Signal::new(samples, params.sample_rate_hz)?)?;
    Ok(x)
}

/// Signals `0..count`, paired with their ids.
pub fn synthesize_family(params: &SynthParams, seed: u64, count: usize) -> Result<Vec<(String, Signal)>> {
    (0..count).map(|i| Ok((synth_id(i), synthesize(params, seed, i)?))).collect()
}
