use pardeq_core::{sdr, ConsistencySet, Quantizer, Signal};
use proptest::prelude::*;

fn sinusoid(freq_hz: f64, rate: u32, len: usize, amplitude: f64) -> Signal {
    let w = 2.0 * std::f64::consts::PI * freq_hz / rate as f64;
    Signal::new((0..len).map(|n| amplitude * (w * n as f64).sin()).collect(), rate).unwrap()
}

#[test]
fn sinusoid_snr_follows_six_db_per_bit() {
    let x = sinusoid(997.0, 48_000, 48_000, 1.0);
    for bits in [8, 10, 12, 14, 16] {
        let q = Quantizer::new(bits).unwrap();
        let s = sdr(&x, &q.quantize(&x)).unwrap();
        let expected = 6.02 * bits as f64 + 1.76;
        assert!((s - expected).abs() <= 1.5, "{bits} bits: {s:.2} dB vs {expected:.2} dB");
    }
}

#[test]
fn levels_and_saturation() {
    let q = Quantizer::new(3).unwrap();
    assert_eq!(q.step(), 0.25);
    assert_eq!(q.max_level(), 0.875);
    assert_eq!(q.quantize_sample(0.0), 0.125);
    assert_eq!(q.quantize_sample(-1e-9), -0.125);
    assert_eq!(q.quantize_sample(5.0), 0.875);
    assert_eq!(q.quantize_sample(-5.0), -0.875);
    assert!(q.is_level(0.375));
    assert!(!q.is_level(0.25));
}

#[test]
fn rejects_bad_inputs() {
    assert!(Quantizer::new(0).is_err());
    assert!(Quantizer::new(33).is_err());
    assert!(ConsistencySet::new(vec![0.0, 1.0], vec![1.0]).is_err());
    assert!(ConsistencySet::new(vec![1.0], vec![0.0]).is_err());
    let q = Quantizer::new(4).unwrap();
    assert!(q.consistency_set_of(&[0.1]).is_err());
}

proptest! {
    #[test]
    fn quantization_is_idempotent(bits in 1u32..=24, x in -2.0f64..2.0) {
        let q = Quantizer::new(bits).unwrap();
        let y = q.quantize_sample(x);
        prop_assert_eq!(q.quantize_sample(y), y);
        prop_assert!(q.is_level(y));
    }

    #[test]
    fn error_within_half_step_in_range(bits in 1u32..=24, x in -1.0f64..1.0) {
        let q = Quantizer::new(bits).unwrap();
        prop_assert!((q.quantize_sample(x) - x).abs() <= q.step() / 2.0 + 1e-15);
    }

    #[test]
    fn cell_contains_its_preimage(bits in 1u32..=20, x in prop::collection::vec(-1.0f64..1.0, 1..40)) {
        let q = Quantizer::new(bits).unwrap();
        let y = q.quantize(&Signal::new(x.clone(), 1).unwrap());
        let set = q.consistency_set(&y).unwrap();
        prop_assert!(set.contains(&x));
        prop_assert!(set.lower().iter().chain(set.upper()).all(|v| v.abs() <= 1.0));
    }

    #[test]
    fn projection_is_non_expansive_and_idempotent(
        pairs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, -1.0f64..1.0, 0.0f64..1.0), 1..40),
    ) {
        let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let lower: Vec<f64> = pairs.iter().map(|p| p.2).collect();
        let upper: Vec<f64> = pairs.iter().map(|p| p.2 + p.3).collect();
        let set = ConsistencySet::new(lower, upper).unwrap();
        let px = set.project(&Signal::new(x.clone(), 1).unwrap()).unwrap();
        let py = set.project(&Signal::new(y.clone(), 1).unwrap()).unwrap();
        let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
        prop_assert!(d(px.samples(), py.samples()) <= d(&x, &y) + 1e-12);
        prop_assert!(set.contains(px.samples()));
        prop_assert_eq!(set.project(&px).unwrap(), px);
    }
}
