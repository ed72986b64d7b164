//! The bit-depth grid experiment.
//!
//! Every (signal, coarse bits, fine bits) cell is an independent job run on
//! a bounded pool of worker threads. Each cell records the SDR of the raw
//! coarse observation, of the single-branch reconstruction and of the
//! dual-branch reconstruction, the latter two as the best SDR over the
//! configured iterations. Rows are sorted before writing so that output is
//! independent of scheduling.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use log::{info, warn};
use pardeq_core::{peak_normalize, Quantizer, Signal};

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::pipeline::{evaluate, prepare};
use crate::synth::synthesize_family;
use crate::wav::load_wav;

/// One grid cell. `None` marks a cell that failed; it is written as an empty field.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub signal_id: String,
    pub coarse_bits: u32,
    pub fine_bits: u32,
    pub k: usize,
    pub sdr_y2: Option<f64>,
    pub sdr_cpa: Option<f64>,
    pub sdr_cva: Option<f64>,
    pub best_iter: Option<usize>,
    pub wall_time_s: Option<f64>,
}

/// Mean over the signals of one (coarse, fine) pair; failed cells are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAverage {
    pub coarse_bits: u32,
    pub fine_bits: u32,
    pub k: usize,
    pub signals: usize,
    pub mean_sdr_y2: Option<f64>,
    pub mean_sdr_cpa: Option<f64>,
    pub mean_sdr_cva: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResults {
    pub rows: Vec<GridRow>,
    pub averages: Vec<GridAverage>,
}

pub const RESULTS_HEADER: [&str; 9] =
    ["signal_id", "coarse_bits", "fine_bits", "k", "sdr_y2", "sdr_cpa", "sdr_cva", "best_iter", "wall_time_s"];
pub const AVERAGES_HEADER: [&str; 7] =
    ["coarse_bits", "fine_bits", "k", "signals", "mean_sdr_y2", "mean_sdr_cpa", "mean_sdr_cva"];

/// Loads (and peak-normalizes) the configured WAV inputs followed by the synthetic family.
pub fn load_signals(cfg: &ExperimentConfig) -> Result<Vec<(String, Signal)>> {
    let mut signals = Vec::new();
    for path in &cfg.inputs {
        let x = load_wav(path)?;
        let (x, _) = peak_normalize(&x)?;
        let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into());
        signals.push((id, x));
    }
    signals.extend(synthesize_family(&cfg.synth.params(), cfg.seed, cfg.synth.count)?);
    Ok(signals)
}

pub fn run_grid(cfg: &ExperimentConfig) -> Result<GridResults> {
    cfg.validate()?;
    let signals = load_signals(cfg)?;
    Ok(run_grid_on(cfg, &signals))
}

/// Runs the grid on already-normalized signals.
pub fn run_grid_on(cfg: &ExperimentConfig, signals: &[(String, Signal)]) -> GridResults {
    let mut jobs = Vec::new();
    for (s, _) in signals.iter().enumerate() {
        for &coarse in &cfg.coarse_bits {
            for &fine in &cfg.fine_bits {
                jobs.push((s, coarse, fine));
            }
        }
    }
    for &coarse in &cfg.coarse_bits {
        for &fine in &cfg.fine_bits {
            if fine < coarse {
                warn!("fine branch ({fine} bps) is coarser than the full-rate branch ({coarse} bps)");
            }
        }
    }

    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = cfg.workers.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(s, coarse, fine)) = jobs.get(i) else { break };
                let (id, x) = &signals[s];
                let row = run_cell(cfg, id, x, coarse, fine);
                rows.lock().unwrap().push(row);
            });
        }
    });

    let mut rows = rows.into_inner().unwrap();
    rows.sort_by(|a, b| {
        (&a.signal_id, a.coarse_bits, a.fine_bits).cmp(&(&b.signal_id, b.coarse_bits, b.fine_bits))
    });
    let averages = average(cfg, &rows);
    GridResults { rows, averages }
}

fn run_cell(cfg: &ExperimentConfig, id: &str, x: &Signal, coarse: u32, fine: u32) -> GridRow {
    let start = Instant::now();
    let mut row = GridRow {
        signal_id: id.to_string(),
        coarse_bits: coarse,
        fine_bits: fine,
        k: cfg.k,
        sdr_y2: None,
        sdr_cpa: None,
        sdr_cva: None,
        best_iter: None,
        wall_time_s: None,
    };
    let outcome = (|| -> Result<_> {
        let prepared = prepare(x, cfg.k, &cfg.filter, &cfg.frame, fine, coarse)?;
        let lambda = cfg.lambda_for(&Quantizer::new(coarse)?, fine);
        let cva_cfg = cfg.solver.cva_config(&prepared.model.filter, lambda);
        let cpa_cfg = cfg.solver.cpa_config(lambda);
        evaluate(&prepared, x, &cva_cfg, &cpa_cfg)
    })();
    match outcome {
        Ok(eval) => {
            row.sdr_y2 = Some(eval.sdr_y2);
            row.sdr_cpa = eval.cpa.best_sdr();
            row.sdr_cva = eval.cva.best_sdr();
            row.best_iter = eval.cva.best_sdr_iter;
            info!("{id} coarse={coarse} fine={fine}: y2 {:.2} dB, CPA {:.2} dB, CVA {:.2} dB", eval.sdr_y2, eval.sdr_cpa(), eval.sdr_cva());
        }
        Err(e) => warn!("{id} coarse={coarse} fine={fine}: cell skipped: {e}"),
    }
    if cfg.record_timing {
        row.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    row
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (sum, n) = values.flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn average(cfg: &ExperimentConfig, rows: &[GridRow]) -> Vec<GridAverage> {
    let mut out = Vec::new();
    for &coarse in &cfg.coarse_bits {
        for &fine in &cfg.fine_bits {
            let cell: Vec<&GridRow> = rows.iter().filter(|r| r.coarse_bits == coarse && r.fine_bits == fine).collect();
            out.push(GridAverage {
                coarse_bits: coarse,
                fine_bits: fine,
                k: cfg.k,
                signals: cell.iter().filter(|r| r.sdr_cva.is_some()).count(),
                mean_sdr_y2: mean(cell.iter().map(|r| r.sdr_y2)),
                mean_sdr_cpa: mean(cell.iter().map(|r| r.sdr_cpa)),
                mean_sdr_cva: mean(cell.iter().map(|r| r.sdr_cva)),
            });
        }
    }
    out.sort_by_key(|a| (a.coarse_bits, a.fine_bits));
    out.dedup_by_key(|a| (a.coarse_bits, a.fine_bits));
    out
}

fn fmt_db(v: Option<f64>) -> String {
    match v {
        None => String::new(),
        Some(v) if v == f64::INFINITY => "inf".into(),
        Some(v) => format!("{v:.4}"),
    }
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl GridResults {
    pub fn write_results<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(RESULTS_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.signal_id.clone(),
                r.coarse_bits.to_string(),
                r.fine_bits.to_string(),
                r.k.to_string(),
                fmt_db(r.sdr_y2),
                fmt_db(r.sdr_cpa),
                fmt_db(r.sdr_cva),
                fmt_opt(r.best_iter),
                r.wall_time_s.map(|t| format!("{t:.3}")).unwrap_or_default(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn write_averages<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(AVERAGES_HEADER)?;
        for a in &self.averages {
            w.write_record([
                a.coarse_bits.to_string(),
                a.fine_bits.to_string(),
                a.k.to_string(),
                a.signals.to_string(),
                fmt_db(a.mean_sdr_y2),
                fmt_db(a.mean_sdr_cpa),
                fmt_db(a.mean_sdr_cva),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    /// Writes `results.csv` and `averages.csv` into `dir`, returning their paths.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let results = dir.join("results.csv");
        let averages = dir.join("averages.csv");
        let f = std::fs::File::create(&results).map_err(|e| Error::io(&results, e))?;
        self.write_results(std::io::BufWriter::new(f))?;
        let f = std::fs::File::create(&averages).map_err(|e| Error::io(&averages, e))?;
        self.write_averages(std::io::BufWriter::new(f))?;
        Ok((results, averages))
    }
}
