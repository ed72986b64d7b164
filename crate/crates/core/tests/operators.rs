use pardeq_core::filter::design_lowpass;
use pardeq_core::{Coefficients, Complex64, Downsampler, FirFilter, Signal, TfFrame};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: u64 = 100;
const LENGTHS: [usize; 2] = [64, 256];
const TOL: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn signal(v: Vec<f64>) -> Signal {
    Signal::new(v, 1).unwrap()
}

fn small_frame(len: usize) -> TfFrame {
    TfFrame::new(32, 8, 32, len).unwrap()
}

fn random_coefficients(rng: &mut ChaCha8Rng, frame: &TfFrame) -> Coefficients {
    let data = (0..frame.num_coefficients())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Coefficients::from_vec(data, frame.num_channels()).unwrap()
}

#[test]
fn filter_adjoint() {
    for len in LENGTHS {
        for seed in 0..DRAWS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let taps = rng.gen_range(1..=len.min(129));
            let b = FirFilter::new(gaussian_vec(&mut rng, taps)).unwrap();
            let x = signal(gaussian_vec(&mut rng, len));
            let y = signal(gaussian_vec(&mut rng, len));
            let bx = b.apply(&x);
            let bty = b.apply_adjoint(&y);
            let lhs = dot(bx.samples(), y.samples());
            let rhs = dot(x.samples(), bty.samples());
            let rel = (lhs - rhs).abs() / (norm(bx.samples()) * norm(y.samples()));
            assert!(rel < TOL, "len {len} seed {seed}: {rel:e}");
        }
    }
}

#[test]
fn downsampler_adjoint_and_right_inverse() {
    for len in LENGTHS {
        for seed in 0..DRAWS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = [1, 2, 4, 8][rng.gen_range(0..4)];
            let d = Downsampler::new(k).unwrap();
            let x = signal(gaussian_vec(&mut rng, len));
            let y = gaussian_vec(&mut rng, len / k);
            let dx = d.downsample(&x).unwrap();
            let dty = d.upsample_adjoint(&y, len).unwrap();
            let lhs = dot(dx.samples(), &y);
            let rhs = dot(x.samples(), &dty);
            let rel = (lhs - rhs).abs() / (norm(dx.samples()) * norm(&y));
            assert!(rel < TOL, "len {len} k {k}: {rel:e}");

            let round = d.downsample(&signal(dty)).unwrap();
            assert_eq!(round.samples(), &y[..]);
        }
    }
}

#[test]
fn frame_adjoint_and_parseval() {
    for len in LENGTHS {
        let frame = small_frame(len);
        for seed in 0..DRAWS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = signal(gaussian_vec(&mut rng, len));
            let c = random_coefficients(&mut rng, &frame);
            let ax = frame.analyze(&x).unwrap();
            let atc = frame.synthesize(&c).unwrap();
            let lhs = ax.real_dot(&c);
            let rhs = dot(x.samples(), atc.samples());
            let rel = (lhs - rhs).abs() / (ax.l2_norm() * c.l2_norm());
            assert!(rel < TOL, "adjoint len {len} seed {seed}: {rel:e}");

            let back = frame.synthesize(&ax).unwrap();
            let err: Vec<f64> = back.samples().iter().zip(x.samples()).map(|(a, b)| a - b).collect();
            let rel = norm(&err) / norm(x.samples());
            assert!(rel < TOL, "A*A len {len} seed {seed}: {rel:e}");
            assert!((ax.l2_norm() / norm(x.samples()) - 1.0).abs() < TOL);
        }
    }
}

#[test]
fn default_frame_is_parseval() {
    let len = 8192;
    let frame = TfFrame::new(2048, 512, 2048, len).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = signal(gaussian_vec(&mut rng, len));
    let back = frame.synthesize(&frame.analyze(&x).unwrap()).unwrap();
    let err: Vec<f64> = back.samples().iter().zip(x.samples()).map(|(a, b)| a - b).collect();
    assert!(norm(&err) / norm(x.samples()) < TOL);
}

#[test]
fn filter_gain_is_bounded_by_l1_norm() {
    let b = design_lowpass(4, 129, 8.0).unwrap();
    for seed in 0..DRAWS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = signal(gaussian_vec(&mut rng, 256));
        let bx = b.apply(&x);
        assert!(norm(bx.samples()) <= b.l1_norm() * norm(x.samples()) * (1.0 + 1e-12));
    }
}

/// Magnitude response from the taps' DTFT, evaluated directly.
fn dtft_magnitude(taps: &[f64], cycles_per_sample: f64) -> f64 {
    let w = 2.0 * std::f64::consts::PI * cycles_per_sample;
    let (re, im) = taps
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (n, &h)| (re + h * (w * n as f64).cos(), im - h * (w * n as f64).sin()));
    re.hypot(im)
}

#[test]
fn lowpass_response() {
    let b = design_lowpass(4, 129, 8.0).unwrap();
    assert!((dtft_magnitude(b.taps(), 0.0) - 1.0).abs() < 1e-12);
    let atten = 20.0 * dtft_magnitude(b.taps(), 0.25).log10();
    assert!(atten < -60.0, "{atten} dB at 0.25 cycles/sample");
    for f in [0.0, 0.02, 0.05, 0.08] {
        let g = 20.0 * dtft_magnitude(b.taps(), f).log10();
        assert!(g.abs() < 0.1, "{g} dB passband ripple at {f}");
    }
    let t = b.taps();
    assert!(t.iter().zip(t.iter().rev()).all(|(a, b)| a == b));
}

proptest! {
    #[test]
    fn filter_is_linear(
        taps in prop::collection::vec(-1.0f64..1.0, 1..20),
        x in prop::collection::vec(-1.0f64..1.0, 64),
        y in prop::collection::vec(-1.0f64..1.0, 64),
        a in -3.0f64..3.0,
    ) {
        let b = FirFilter::new(taps).unwrap();
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + v).collect();
        let lhs = b.apply(&signal(combo));
        let bx = b.apply(&signal(x));
        let by = b.apply(&signal(y));
        for ((l, u), v) in lhs.samples().iter().zip(bx.samples()).zip(by.samples()) {
            prop_assert!((l - (a * u + v)).abs() < 1e-12);
        }
    }

    #[test]
    fn analysis_is_linear(
        x in prop::collection::vec(-1.0f64..1.0, 64),
        y in prop::collection::vec(-1.0f64..1.0, 64),
        a in -3.0f64..3.0,
    ) {
        let frame = small_frame(64);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + v).collect();
        let lhs = frame.analyze(&signal(combo)).unwrap();
        let ax = frame.analyze(&signal(x)).unwrap();
        let ay = frame.analyze(&signal(y)).unwrap();
        for ((l, u), v) in lhs.as_slice().iter().zip(ax.as_slice()).zip(ay.as_slice()) {
            prop_assert!((l - (u * a + v)).norm() < 1e-12);
        }
    }

    #[test]
    fn padding_round_trips(x in prop::collection::vec(-1.0f64..1.0, 1..300), m in 1usize..100) {
        let s = signal(x.clone());
        let p = s.pad_to_multiple(m).unwrap();
        prop_assert_eq!(p.signal.len() % m, 0);
        prop_assert!(p.signal.len() - x.len() < m);
        prop_assert!(p.signal.samples()[x.len()..].iter().all(|v| *v == 0.0));
        let back = p.truncate(&p.signal).unwrap();
        prop_assert_eq!(back.samples(), &x[..]);
    }
}
