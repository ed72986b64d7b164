//! File-level operations behind the CLI subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};

use log::{info, warn};
use pardeq_core::{cpa_solve, cva_solve, peak_normalize, sdr, Padded, Quantizer, Signal, SolverRun};

use crate::config::{Lambda, SolverSection};
use crate::error::{Error, Result};
use crate::manifest::{FilterRecord, Manifest, SolverRecord, MANIFEST_VERSION};
use crate::pipeline::{prepare, FilterParams, FrameParams};
use crate::synth::{synthesize_family, SynthParams};
use crate::wav::{load_wav, save_wav, WavFormat};

pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateOptions {
    pub k: usize,
    pub coarse_bits: u32,
    pub fine_bits: u32,
    pub filter: FilterParams,
    pub frame: FrameParams,
    pub solver: SolverSection,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        Self {
            k: 4,
            coarse_bits: 10,
            fine_bits: 20,
            filter: FilterParams::default(),
            frame: FrameParams::default(),
            solver: SolverSection::default(),
        }
    }
}

/// Peak-normalizes `input`, runs both acquisition branches and writes
/// `y1.wav`, `y2.wav`, `reference.wav` and `manifest.toml` into `out_dir`.
///
/// Observations are stored as 32-bit integer PCM, which holds every level
/// of a quantizer of up to 31 bits exactly.
pub fn simulate(input: &Path, out_dir: &Path, opts: &SimulateOptions) -> Result<Manifest> {
    if opts.coarse_bits > 31 || opts.fine_bits > 31 {
        return Err(Error::Config("observations above 31 bits cannot be stored exactly in 32-bit PCM".into()));
    }
    let x = load_wav(input)?;
    let (x, gain) = peak_normalize(&x)?;
    let prepared = prepare(&x, opts.k, &opts.filter, &opts.frame, opts.fine_bits, opts.coarse_bits)?;
    if !prepared.model.is_standard() {
        warn!("fine branch ({} bps) is coarser than the full-rate branch ({} bps)", opts.fine_bits, opts.coarse_bits);
    }
    let obs = prepared.observe()?;

    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    save_wav(out_dir.join("y1.wav"), &obs.y1, WavFormat::Int32)?;
    save_wav(out_dir.join("y2.wav"), &obs.y2, WavFormat::Int32)?;
    save_wav(out_dir.join("reference.wav"), &x, WavFormat::Float32)?;

    let lambda = opts.solver.lambda.resolve(&prepared.model.coarse);
    let cva = opts.solver.cva_config(&prepared.model.filter, lambda);
    let cpa = opts.solver.cpa_config(lambda);
    cva.validate_cva(&prepared.model.filter)?;
    cpa.validate_cpa()?;
    let manifest = Manifest {
        version: MANIFEST_VERSION,
        sample_rate_hz: x.sample_rate_hz(),
        original_len: prepared.padded.original_len,
        padded_len: prepared.padded.signal.len(),
        normalization_gain: gain,
        k: opts.k,
        coarse_bits: opts.coarse_bits,
        fine_bits: opts.fine_bits,
        y1: "y1.wav".into(),
        y2: "y2.wav".into(),
        reference: Some("reference.wav".into()),
        filter: FilterRecord::new(opts.filter, &prepared.model.filter),
        frame: opts.frame,
        solver: SolverRecord {
            tau: cva.tau,
            sigma: cva.sigma,
            rho: cva.rho,
            lambda: cva.lambda,
            max_iters: cva.max_iters,
            cpa_tau: cpa.tau,
            cpa_sigma: cpa.sigma,
        },
    };
    manifest.save(out_dir.join(MANIFEST_FILE))?;
    info!(
        "simulated {} samples (padded to {}), gain {gain}",
        manifest.original_len, manifest.padded_len
    );
    Ok(manifest)
}

/// Solver overrides accepted by `reconstruct` and `baseline`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveOverrides {
    pub lambda: Option<f64>,
    pub max_iters: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Both branches, Condat–Vũ.
    DualBranch,
    /// Coarse branch only, Chambolle–Pock.
    Baseline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutput {
    /// Estimate cut back to the unpadded length.
    pub estimate: Signal,
    pub run: SolverRun,
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_relative() {
        base.join(p)
    } else {
        p.to_path_buf()
    }
}

/// Rebuilds the operators from a manifest and runs one solver.
///
/// With `reference` the best-SDR iterate is returned; otherwise the final one.
pub fn solve_from_manifest(
    manifest_path: &Path,
    method: Method,
    overrides: SolveOverrides,
    reference: Option<&Path>,
) -> Result<SolveOutput> {
    let m = Manifest::load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let y2 = load_wav(resolve(base, &m.y2))?;
    if y2.len() != m.padded_len {
        return Err(Error::Manifest(format!("y2 has {} samples, manifest says {}", y2.len(), m.padded_len)));
    }
    let y2 = Signal::new(y2.into_samples(), m.sample_rate_hz)?;
    let frame = m.frame.build(m.padded_len)?;

    let reference = match reference {
        Some(path) => {
            let r = load_wav(path)?;
            if r.len() != m.original_len {
                return Err(Error::Manifest(format!(
                    "reference has {} samples, expected {}",
                    r.len(),
                    m.original_len
                )));
            }
            Some(r)
        }
        None => None,
    };

    let mut record = m.solver;
    if let Some(l) = overrides.lambda {
        record.lambda = l;
    }
    if let Some(n) = overrides.max_iters {
        record.max_iters = n;
    }

    let run = match method {
        Method::DualBranch => {
            let y1 = load_wav(resolve(base, &m.y1))?;
            let filter = m.filter.rebuild(m.k)?;
            let model = pardeq_core::AcquisitionModel::new(filter, m.k, m.fine_bits, m.coarse_bits)?;
            cva_solve(&y1, &y2, &model, &frame, &record.cva(), reference.as_ref())?
        }
        Method::Baseline => {
            let coarse = Quantizer::new(m.coarse_bits)?;
            cpa_solve(&y2, &coarse, &frame, &record.cpa(), reference.as_ref())?
        }
    };
    let padded = Padded { signal: y2, original_len: m.original_len };
    let estimate = padded.truncate(&run.estimate)?;
    Ok(SolveOutput { estimate, run })
}

/// Writes `iter,objective,relative_change[,sdr]`, one line per iteration.
pub fn write_trace<W: Write>(run: &SolverRun, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let with_sdr = run.sdr_trace.is_some();
    if with_sdr {
        w.write_record(["iter", "objective", "relative_change", "sdr"])?;
    } else {
        w.write_record(["iter", "objective", "relative_change"])?;
    }
    for i in 0..run.iterations() {
        let mut rec = vec![(i + 1).to_string(), format!("{:e}", run.objective_trace[i]), format!("{:e}", run.change_trace[i])];
        if let Some(s) = &run.sdr_trace {
            rec.push(format!("{:.6}", s[i]));
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<trace>", e))?;
    Ok(())
}

pub fn write_trace_file(run: &SolverRun, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_trace(run, std::io::BufWriter::new(f))
}

/// SDR of `estimate` against `reference`, in dB.
pub fn sdr_files(reference: &Path, estimate: &Path) -> Result<f64> {
    let r = load_wav(reference)?;
    let e = load_wav(estimate)?;
    Ok(sdr(&r, &e)?)
}

/// Writes `synth-000.wav`, ... into `out_dir`.
pub fn synth_to_dir(params: &SynthParams, seed: u64, count: usize, out_dir: &Path, format: WavFormat) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    synthesize_family(params, seed, count)?
        .into_iter()
        .map(|(id, x)| {
            let path = out_dir.join(format!("{id}.wav"));
            save_wav(&path, &x, format)?;
            Ok(path)
        })
        .collect()
}

/// Parses a λ given on the command line: a number or `auto`.
pub fn parse_lambda(s: &str) -> std::result::Result<Lambda, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Lambda::default());
    }
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(Lambda::Fixed(v)),
        _ => Err(format!("expected a positive number or 'auto', got '{s}'")),
    }
}
