//! Primal-dual solvers for quantization-consistent, frame-sparse reconstruction.
//!
//! [`cva_solve`] minimizes `λ‖Ax‖₁ + ι_Γfine(D_k B x) + ι_Γcoarse(x)` with the
//! Condat–Vũ iteration, treating the stacked operator `[A; D_k B; Id]`. For
//! each of the three terms the dual step is the prox of the convex
//! conjugate: clipping for the ℓ1 term, and `p − σ proj_Γ(p/σ)` for the two
//! box indicators. The primal step is
//!
//! ```text
//! x̃ = x − τ (A*u₁ + B*D_k*u₂ + u₃)
//! ```
//!
//! Convergence needs `τσ‖A*A + (D_kB)*(D_kB) + Id‖ ≤ 1`; with a Parseval
//! frame and `‖B‖ ≤ ‖b‖₁` this is implied by `τσ(2 + ‖b‖₁²) ≤ 1`, which is
//! the check applied here. The relaxation `ρ` must lie in `(0, 2)`.
//!
//! [`cpa_solve`] is the single-branch baseline: Chambolle–Pock on
//! `λ‖Ax‖₁ + ι_Γcoarse(x)` with `τσ ≤ 1`.
//!
//! Both solvers run a fixed number of iterations. When a clean reference is
//! supplied they also track the SDR of every iterate and return the best one.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::acquisition::AcquisitionModel;
use crate::error::{Error, Result};
use crate::filter::FirFilter;
use crate::frame::{l1_norm, TfFrame};
use crate::metrics::sdr_slices;
use crate::prox::{box_conjugate_prox, clip_complex};
use crate::quantizer::{ConsistencySet, Quantizer};
use crate::resample::Downsampler;
use crate::signal::{norm2, Signal};

pub const DEFAULT_MAX_ITERS: usize = 200;

/// Relative slack allowed when checking the step-size conditions, so that
/// steps saturating a bound with equality are accepted.
const STEP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tau: f64,
    pub sigma: f64,
    pub rho: f64,
    pub lambda: f64,
    pub max_iters: usize,
}

impl SolverConfig {
    /// Defaults for the dual-branch solver with filter `b`: steps from
    /// [`default_steps`], `ρ = 1`, `λ = 1`, 200 iterations.
    pub fn for_filter(b: &FirFilter) -> Self {
        let (tau, sigma) = default_steps(b);
        Self { tau, sigma, rho: 1.0, lambda: 1.0, max_iters: DEFAULT_MAX_ITERS }
    }

    /// Defaults for the single-branch baseline (`τ = σ = 1`).
    pub fn baseline() -> Self {
        Self { tau: 1.0, sigma: 1.0, rho: 1.0, lambda: 1.0, max_iters: DEFAULT_MAX_ITERS }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    fn validate_common(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.tau) || !positive(self.sigma) {
            return Err(Error::Config("step sizes must be positive and finite"));
        }
        if !positive(self.lambda) {
            return Err(Error::Config("lambda must be positive and finite"));
        }
        if !(self.rho > 0.0 && self.rho < 2.0) {
            return Err(Error::Config("relaxation rho must lie in (0, 2)"));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("at least one iteration is required"));
        }
        Ok(())
    }

    /// Checks `τσ(2 + ‖b‖₁²) ≤ 1` and the common parameter ranges.
    pub fn validate_cva(&self, b: &FirFilter) -> Result<()> {
        self.validate_common()?;
        let l1 = b.l1_norm();
        if self.tau * self.sigma * (2.0 + l1 * l1) > 1.0 + STEP_SLACK {
            return Err(Error::Config("step sizes violate tau*sigma*(2 + |b|_1^2) <= 1"));
        }
        Ok(())
    }

    /// Checks `τσ ≤ 1` (the frame has unit norm) and the common parameter ranges.
    pub fn validate_cpa(&self) -> Result<()> {
        self.validate_common()?;
        if self.tau * self.sigma > 1.0 + STEP_SLACK {
            return Err(Error::Config("step sizes violate tau*sigma <= 1"));
        }
        Ok(())
    }
}

/// `τ = σ = 1/sqrt(2 + ‖b‖₁²)`, saturating the dual-branch step condition.
pub fn default_steps(b: &FirFilter) -> (f64, f64) {
    let l1 = b.l1_norm();
    let step = 1.0 / libm::sqrt(2.0 + l1 * l1);
    (step, step)
}

/// Largest per-sample distance from each constraint box.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeasibilityGap {
    pub coarse: f64,
    /// Always 0 for the single-branch solver, which has no fine constraint.
    pub fine: f64,
}

impl FeasibilityGap {
    pub fn max(&self) -> f64 {
        self.coarse.max(self.fine)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverRun {
    /// Best-SDR iterate when a reference was given, the final iterate otherwise.
    pub estimate: Signal,
    /// `λ‖Ax⁽ⁱ⁾‖₁` after each iteration.
    pub objective_trace: Vec<f64>,
    /// `‖x⁽ⁱ⁾ − x⁽ⁱ⁻¹⁾‖ / ‖x⁽ⁱ⁾‖` after each iteration; diagnostic only.
    pub change_trace: Vec<f64>,
    pub sdr_trace: Option<Vec<f64>>,
    /// 1-based iteration that produced the best SDR.
    pub best_sdr_iter: Option<usize>,
    /// Measured at `estimate`.
    pub feasibility_gap: FeasibilityGap,
}

impl SolverRun {
    pub fn iterations(&self) -> usize {
        self.objective_trace.len()
    }

    pub fn best_sdr(&self) -> Option<f64> {
        let it = self.best_sdr_iter?;
        self.sdr_trace.as_ref().map(|t| t[it - 1])
    }
}

/// A dual-branch reconstruction problem with explicit constraint boxes.
///
/// [`cva_solve`] builds one from quantized observations; constructing it
/// directly allows arbitrary boxes.
#[derive(Debug, Clone, Copy)]
pub struct DualBranchProblem<'a> {
    pub frame: &'a TfFrame,
    pub filter: &'a FirFilter,
    pub downsampler: Downsampler,
    /// Box for `D_k B x` (length `L/k`).
    pub fine: &'a ConsistencySet,
    /// Box for `x` (length `L`).
    pub coarse: &'a ConsistencySet,
}

impl DualBranchProblem<'_> {
    fn check(&self) -> Result<()> {
        let len = self.frame.signal_len();
        let k = self.downsampler.factor();
        if len % k != 0 {
            return Err(Error::NotMultiple { len, factor: k });
        }
        if self.coarse.len() != len {
            return Err(Error::InvalidLength { expected: len, actual: self.coarse.len() });
        }
        if self.fine.len() != len / k {
            return Err(Error::InvalidLength { expected: len / k, actual: self.fine.len() });
        }
        Ok(())
    }

    fn gap(&self, x: &[f64], scratch: &mut [f64], low: &mut [f64]) -> FeasibilityGap {
        self.filter.apply_into(x, scratch);
        self.downsampler.downsample_into(scratch, low);
        FeasibilityGap { coarse: self.coarse.max_violation(x), fine: self.fine.max_violation(low) }
    }
}

/// Condat–Vũ reconstruction from the two observations.
///
/// `y2` must already have the frame's length `L` (pad beforehand) and `y1`
/// length `L/k`; both must lie on their quantizers' level grids. Starts from
/// `x⁽⁰⁾ = y2` with zero duals. `reference` may be shorter than `L`, in
/// which case the SDR covers only its leading samples (the unpadded part).
pub fn cva_solve(
    y1: &Signal,
    y2: &Signal,
    model: &AcquisitionModel,
    frame: &TfFrame,
    cfg: &SolverConfig,
    reference: Option<&Signal>,
) -> Result<SolverRun> {
    cfg.validate_cva(&model.filter)?;
    let len = frame.signal_len();
    if y2.len() != len {
        return Err(Error::InvalidLength { expected: len, actual: y2.len() });
    }
    if y1.len() * model.factor() != len {
        return Err(Error::InvalidLength { expected: len / model.factor(), actual: y1.len() });
    }
    let fine = model.fine.consistency_set(y1)?;
    let coarse = model.coarse.consistency_set(y2)?;
    let problem = DualBranchProblem {
        frame,
        filter: &model.filter,
        downsampler: model.downsampler,
        fine: &fine,
        coarse: &coarse,
    };
    cva_solve_problem(&problem, y2, cfg, reference)
}

pub fn cva_solve_problem(
    problem: &DualBranchProblem<'_>,
    x0: &Signal,
    cfg: &SolverConfig,
    reference: Option<&Signal>,
) -> Result<SolverRun> {
    cfg.validate_cva(problem.filter)?;
    problem.check()?;
    let len = problem.frame.signal_len();
    if x0.len() != len {
        return Err(Error::InvalidLength { expected: len, actual: x0.len() });
    }
    check_reference(reference, len)?;

    let frame = problem.frame;
    let k = problem.downsampler.factor();
    let (tau, sigma, rho, lambda) = (cfg.tau, cfg.sigma, cfg.rho, cfg.lambda);
    let zero = Complex64::new(0.0, 0.0);

    let mut x = x0.samples().to_vec();
    let mut x_tilde = vec![0.0; len];
    let mut x_bar = vec![0.0; len];
    let mut u1 = vec![zero; frame.num_coefficients()];
    let mut u2 = vec![0.0; len / k];
    let mut u3 = vec![0.0; len];
    let mut coef = vec![zero; frame.num_coefficients()];
    let mut a_adj = vec![0.0; len];
    let mut b_adj = vec![0.0; len];
    let mut scratch = vec![0.0; len];
    let mut low = vec![0.0; len / k];

    let mut tracker = Tracker::new(reference, cfg.max_iters);
    for _ in 0..cfg.max_iters {
        // primal step
        frame.synthesize_into(&u1, &mut a_adj);
        problem.downsampler.upsample_adjoint_into(&u2, &mut scratch);
        problem.filter.apply_adjoint_into(&scratch, &mut b_adj);
        for i in 0..len {
            x_tilde[i] = x[i] - tau * (a_adj[i] + b_adj[i] + u3[i]);
            x_bar[i] = 2.0 * x_tilde[i] - x[i];
        }

        // sparsity dual
        frame.analyze_into(&x_bar, &mut coef);
        for (c, u) in coef.iter_mut().zip(&u1) {
            *c = u + *c * sigma;
        }
        clip_complex(&mut coef, lambda);
        relax_complex(&mut u1, &coef, rho);

        // low-rate consistency dual
        problem.filter.apply_into(&x_bar, &mut scratch);
        problem.downsampler.downsample_into(&scratch, &mut low);
        for (p, u) in low.iter_mut().zip(&u2) {
            *p = u + sigma * *p;
        }
        box_conjugate_prox(&mut low, problem.fine, sigma);
        relax(&mut u2, &low, rho);

        // full-rate consistency dual
        for (p, (u, xb)) in scratch.iter_mut().zip(u3.iter().zip(&x_bar)) {
            *p = u + sigma * xb;
        }
        box_conjugate_prox(&mut scratch, problem.coarse, sigma);
        relax(&mut u3, &scratch, rho);

        // primal relaxation; x_tilde keeps the previous iterate for the change diagnostic
        for (xi, xt) in x.iter_mut().zip(x_tilde.iter_mut()) {
            let next = rho * *xt + (1.0 - rho) * *xi;
            *xt = *xi;
            *xi = next;
        }

        frame.analyze_into(&x, &mut coef);
        tracker.record(&x, &x_tilde, lambda * l1_norm(&coef));
    }

    let (estimate, best) = tracker.finish(x);
    let gap = problem.gap(&estimate, &mut scratch, &mut low);
    Ok(best.into_run(Signal::from_raw(estimate, x0.sample_rate_hz()), gap))
}

/// Chambolle–Pock reconstruction from the coarse observation alone, starting at `y2`.
pub fn cpa_solve(
    y2: &Signal,
    quantizer: &Quantizer,
    frame: &TfFrame,
    cfg: &SolverConfig,
    reference: Option<&Signal>,
) -> Result<SolverRun> {
    cfg.validate_cpa()?;
    let coarse = quantizer.consistency_set(y2)?;
    cpa_solve_set(&coarse, frame, y2, cfg, reference)
}

pub fn cpa_solve_set(
    coarse: &ConsistencySet,
    frame: &TfFrame,
    x0: &Signal,
    cfg: &SolverConfig,
    reference: Option<&Signal>,
) -> Result<SolverRun> {
    cfg.validate_cpa()?;
    let len = frame.signal_len();
    if coarse.len() != len {
        return Err(Error::InvalidLength { expected: len, actual: coarse.len() });
    }
    if x0.len() != len {
        return Err(Error::InvalidLength { expected: len, actual: x0.len() });
    }
    check_reference(reference, len)?;

    let (tau, sigma, lambda) = (cfg.tau, cfg.sigma, cfg.lambda);
    let zero = Complex64::new(0.0, 0.0);
    let mut x = x0.samples().to_vec();
    let mut x_bar = x.clone();
    let mut x_prev = vec![0.0; len];
    let mut u = vec![zero; frame.num_coefficients()];
    let mut coef = vec![zero; frame.num_coefficients()];
    let mut a_adj = vec![0.0; len];

    let mut tracker = Tracker::new(reference, cfg.max_iters);
    for _ in 0..cfg.max_iters {
        frame.analyze_into(&x_bar, &mut coef);
        for (ui, c) in u.iter_mut().zip(&coef) {
            *ui += *c * sigma;
        }
        clip_complex(&mut u, lambda);

        frame.synthesize_into(&u, &mut a_adj);
        x_prev.copy_from_slice(&x);
        for (xi, a) in x.iter_mut().zip(&a_adj) {
            *xi -= tau * a;
        }
        coarse.project_in_place(&mut x);
        for ((xb, xn), xp) in x_bar.iter_mut().zip(&x).zip(&x_prev) {
            *xb = 2.0 * xn - xp;
        }

        frame.analyze_into(&x, &mut coef);
        tracker.record(&x, &x_prev, lambda * l1_norm(&coef));
    }

    let (estimate, best) = tracker.finish(x);
    let gap = FeasibilityGap { coarse: coarse.max_violation(&estimate), fine: 0.0 };
    Ok(best.into_run(Signal::from_raw(estimate, x0.sample_rate_hz()), gap))
}

fn check_reference(reference: Option<&Signal>, len: usize) -> Result<()> {
    match reference {
        Some(r) if r.len() > len => Err(Error::InvalidLength { expected: len, actual: r.len() }),
        Some(r) if r.samples().iter().all(|&v| v == 0.0) => {
            Err(Error::InvalidInput("SDR reference must be nonzero"))
        }
        _ => Ok(()),
    }
}

fn relax(u: &mut [f64], target: &[f64], rho: f64) {
    for (ui, t) in u.iter_mut().zip(target) {
        *ui = rho * t + (1.0 - rho) * *ui;
    }
}

fn relax_complex(u: &mut [Complex64], target: &[Complex64], rho: f64) {
    for (ui, t) in u.iter_mut().zip(target) {
        *ui = t * rho + *ui * (1.0 - rho);
    }
}

/// Per-iteration bookkeeping shared by both solvers.
struct Tracker<'r> {
    reference: Option<&'r Signal>,
    objective: Vec<f64>,
    change: Vec<f64>,
    sdr: Vec<f64>,
    best: Option<(usize, f64, Vec<f64>)>,
}

struct Traces {
    objective: Vec<f64>,
    change: Vec<f64>,
    sdr: Option<Vec<f64>>,
    best_iter: Option<usize>,
}

impl Traces {
    fn into_run(self, estimate: Signal, feasibility_gap: FeasibilityGap) -> SolverRun {
        SolverRun {
            estimate,
            objective_trace: self.objective,
            change_trace: self.change,
            sdr_trace: self.sdr,
            best_sdr_iter: self.best_iter,
            feasibility_gap,
        }
    }
}

impl<'r> Tracker<'r> {
    fn new(reference: Option<&'r Signal>, iters: usize) -> Self {
        Self {
            reference,
            objective: Vec::with_capacity(iters),
            change: Vec::with_capacity(iters),
            sdr: Vec::with_capacity(if reference.is_some() { iters } else { 0 }),
            best: None,
        }
    }

    fn record(&mut self, x: &[f64], x_prev: &[f64], objective: f64) {
        self.objective.push(objective);
        let diff: f64 = x.iter().zip(x_prev).map(|(a, b)| (a - b) * (a - b)).sum();
        let norm = norm2(x);
        self.change.push(if norm > 0.0 { libm::sqrt(diff) / norm } else { libm::sqrt(diff) });

        if let Some(r) = self.reference {
            let value = sdr_slices(r.samples(), &x[..r.len()]).unwrap_or(f64::NEG_INFINITY);
            self.sdr.push(value);
            let iter = self.sdr.len();
            match &mut self.best {
                Some((_, best, _)) if value <= *best => {}
                Some((best_iter, best, best_x)) => {
                    *best_iter = iter;
                    *best = value;
                    best_x.copy_from_slice(x);
                }
                None => self.best = Some((iter, value, x.to_vec())),
            }
        }
    }

    fn finish(self, last: Vec<f64>) -> (Vec<f64>, Traces) {
        let has_reference = self.reference.is_some();
        let (estimate, best_iter) = match self.best {
            Some((iter, _, x)) => (x, Some(iter)),
            None => (last, None),
        };
        let traces = Traces {
            objective: self.objective,
            change: self.change,
            sdr: has_reference.then_some(self.sdr),
            best_iter,
        };
        (estimate, traces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acquisition::simulate_acquisition;

    fn boxes(len: usize, lo: f64, hi: f64) -> ConsistencySet {
        ConsistencySet::uniform(len, lo, hi).unwrap()
    }

    #[test]
    fn default_steps_saturate_the_bound() {
        let (t, s) = default_steps(&FirFilter::identity());
        assert!((t - 1.0 / libm::sqrt(3.0)).abs() < 1e-15);
        assert_eq!(t, s);
        let b = FirFilter::new(vec![0.5, 0.7]).unwrap();
        let (t, s) = default_steps(&b);
        assert!((t - 1.0 / libm::sqrt(3.44)).abs() < 1e-15);
        assert!(t * s * (2.0 + b.l1_norm() * b.l1_norm()) <= 1.0 + 1e-12);
        assert!(SolverConfig::for_filter(&b).validate_cva(&b).is_ok());
    }

    #[test]
    fn config_validation() {
        let b = FirFilter::identity();
        let good = SolverConfig::for_filter(&b);
        assert!(SolverConfig { tau: 1.0, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig { rho: 2.0, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig { rho: 0.0, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig { lambda: 0.0, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig { max_iters: 0, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig { tau: f64::NAN, ..good }.validate_cva(&b).is_err());
        assert!(SolverConfig::baseline().validate_cpa().is_ok());
        assert!(SolverConfig { tau: 1.5, ..SolverConfig::baseline() }.validate_cpa().is_err());
    }

    #[test]
    fn cva_identity_instance_converges_to_min_magnitude_point() {
        let frame = TfFrame::identity(4).unwrap();
        let filter = FirFilter::identity();
        let coarse = boxes(4, 0.2, 0.6);
        let fine = boxes(4, 0.3, 0.8);
        let problem = DualBranchProblem {
            frame: &frame,
            filter: &filter,
            downsampler: Downsampler::new(1).unwrap(),
            fine: &fine,
            coarse: &coarse,
        };
        let cfg = SolverConfig::for_filter(&filter).with_max_iters(2000);
        let x0 = Signal::new(vec![0.5; 4], 1).unwrap();
        let run = cva_solve_problem(&problem, &x0, &cfg, None).unwrap();
        for v in run.estimate.samples() {
            assert!((v - 0.3).abs() < 1e-6, "{v}");
        }
        assert!(run.feasibility_gap.max() < 1e-6);
        assert_eq!(run.iterations(), 2000);
        assert!(run.sdr_trace.is_none());
    }

    #[test]
    fn cva_returns_zero_when_boxes_contain_it() {
        let frame = TfFrame::identity(4).unwrap();
        let filter = FirFilter::identity();
        let coarse = boxes(4, -0.2, 0.4);
        let fine = boxes(4, -0.3, 0.5);
        let problem = DualBranchProblem {
            frame: &frame,
            filter: &filter,
            downsampler: Downsampler::new(1).unwrap(),
            fine: &fine,
            coarse: &coarse,
        };
        let cfg = SolverConfig::for_filter(&filter).with_max_iters(2000);
        let x0 = Signal::new(vec![0.3, -0.1, 0.2, 0.0], 1).unwrap();
        let run = cva_solve_problem(&problem, &x0, &cfg, None).unwrap();
        assert!(run.estimate.samples().iter().all(|v| v.abs() < 1e-6));
    }

    #[test]
    fn cpa_identity_instance() {
        let frame = TfFrame::identity(4).unwrap();
        let cfg = SolverConfig::baseline().with_max_iters(2000);
        let x0 = Signal::new(vec![0.5; 4], 1).unwrap();
        let run = cpa_solve_set(&boxes(4, 0.2, 0.6), &frame, &x0, &cfg, None).unwrap();
        assert!(run.estimate.samples().iter().all(|v| (v - 0.2).abs() < 1e-6));
        let run = cpa_solve_set(&boxes(4, -0.2, 0.6), &frame, &x0, &cfg, None).unwrap();
        assert!(run.estimate.samples().iter().all(|v| v.abs() < 1e-6));
    }

    #[test]
    fn rejects_off_grid_observations_and_bad_lengths() {
        let model = AcquisitionModel::new(FirFilter::identity(), 2, 8, 4).unwrap();
        let frame = TfFrame::new(4, 2, 4, 8).unwrap();
        let cfg = SolverConfig::for_filter(&model.filter);
        let x = Signal::new(vec![0.1, 0.4, -0.3, 0.2, 0.0, 0.5, -0.6, 0.7], 8).unwrap();
        let obs = simulate_acquisition(&x, &model).unwrap();
        assert!(cva_solve(&obs.y1, &obs.y2, &model, &frame, &cfg, Some(&x)).is_ok());
        let off = Signal::new(vec![0.1; 8], 8).unwrap();
        assert!(matches!(
            cva_solve(&obs.y1, &off, &model, &frame, &cfg, None),
            Err(Error::InvalidObservation { .. })
        ));
        assert!(matches!(
            cva_solve(&obs.y2, &obs.y2, &model, &frame, &cfg, None),
            Err(Error::InvalidLength { .. })
        ));
        let bad_cfg = SolverConfig { tau: 1.0, sigma: 1.0, ..cfg };
        assert!(matches!(cva_solve(&obs.y1, &obs.y2, &model, &frame, &bad_cfg, None), Err(Error::Config(_))));
        assert!(cpa_solve(&off, &model.coarse, &frame, &SolverConfig::baseline(), None).is_err());
    }

    #[test]
    fn best_sdr_selection_tracks_the_trace() {
        let model = AcquisitionModel::new(FirFilter::identity(), 2, 12, 4).unwrap();
        let frame = TfFrame::new(8, 2, 8, 32).unwrap();
        let x: Vec<f64> = (0..32).map(|i| 0.8 * libm::sin(0.4 * i as f64)).collect();
        let x = Signal::new(x, 32).unwrap();
        let obs = simulate_acquisition(&x, &model).unwrap();
        let cfg = SolverConfig::for_filter(&model.filter).with_max_iters(50);
        let run = cva_solve(&obs.y1, &obs.y2, &model, &frame, &cfg, Some(&x)).unwrap();
        let trace = run.sdr_trace.as_ref().unwrap();
        assert_eq!(trace.len(), 50);
        assert_eq!(run.objective_trace.len(), 50);
        let best = trace.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(run.best_sdr(), Some(best));
        let direct = crate::metrics::sdr(&x, &run.estimate).unwrap();
        assert_eq!(direct, best);
    }
}
