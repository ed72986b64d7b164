use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use pardeq::commands::{
    parse_lambda, sdr_files, simulate, solve_from_manifest, synth_to_dir, write_trace_file, Method, SimulateOptions,
    SolveOverrides,
};
use pardeq::config::{ExperimentConfig, Lambda, SolverSection};
use pardeq::grid::run_grid;
use pardeq::pipeline::{FilterParams, FrameParams, Window};
use pardeq::synth::SynthParams;
use pardeq::wav::{save_wav, WavFormat};

#[derive(Parser)]
#[command(name = "pardeq", version, about = "Dual-rate dequantization of audio signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantize a WAV through both acquisition branches.
    Simulate(SimulateArgs),
    /// Reconstruct from both branches.
    Reconstruct(SolveArgs),
    /// Reconstruct from the full-rate branch only.
    Baseline(SolveArgs),
    /// Run the bit-depth grid experiment from a TOML config.
    Grid {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the SDR (dB) of an estimate against a reference.
    Sdr { reference: PathBuf, estimate: PathBuf },
    /// Write a family of synthetic test signals.
    Synth {
        #[arg(long, default_value = "synth")]
        output: PathBuf,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        seconds: f64,
        #[arg(long, default_value_t = 16_000)]
        sample_rate: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pcm16,
    Pcm24,
    Pcm32,
    Float,
}

impl From<Format> for WavFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Pcm16 => WavFormat::Int16,
            Format::Pcm24 => WavFormat::Int24,
            Format::Pcm32 => WavFormat::Int32,
            Format::Float => WavFormat::Float32,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    input: PathBuf,
    /// Directory receiving y1.wav, y2.wav, reference.wav and manifest.toml.
    #[arg(short, long)]
    output: PathBuf,
    #[arg(short, long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    coarse_bits: u32,
    #[arg(long, default_value_t = 20)]
    fine_bits: u32,
    /// Positive number or `auto` (a quarter of the full-rate step).
    #[arg(long, default_value = "auto", value_parser = parse_lambda)]
    lambda: Lambda,
    #[arg(long, default_value_t = 200)]
    max_iters: usize,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long)]
    taps: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    window_len: Option<usize>,
    #[arg(long)]
    hop: Option<usize>,
    #[arg(long)]
    channels: Option<usize>,
    #[arg(long)]
    rectangular: bool,
}

#[derive(Args)]
struct SolveArgs {
    manifest: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Reference WAV; when given, the best-SDR iterate is written.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Per-iteration CSV trace.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long, value_enum, default_value = "pcm24")]
    format: Format,
}

fn simulate_cmd(a: SimulateArgs) -> anyhow::Result<()> {
    let defaults = FilterParams::default();
    let frame_defaults = FrameParams::default();
    let opts = SimulateOptions {
        k: a.k,
        coarse_bits: a.coarse_bits,
        fine_bits: a.fine_bits,
        filter: FilterParams { num_taps: a.taps.unwrap_or(defaults.num_taps), beta: a.beta.unwrap_or(defaults.beta) },
        frame: FrameParams {
            window: if a.rectangular { Window::Rectangular } else { Window::Hann },
            window_len: a.window_len.unwrap_or(frame_defaults.window_len),
            hop: a.hop.unwrap_or(frame_defaults.hop),
            channels: a.channels.unwrap_or(frame_defaults.channels),
        },
        solver: SolverSection { max_iters: a.max_iters, rho: a.rho, lambda: a.lambda, ..Default::default() },
    };
    let m = simulate(&a.input, &a.output, &opts).with_context(|| format!("simulating {}", a.input.display()))?;
    println!("wrote {} (lambda = {:e})", a.output.display(), m.solver.lambda);
    Ok(())
}

fn solve_cmd(a: SolveArgs, method: Method) -> anyhow::Result<()> {
    if a.lambda.is_some_and(|l| !(l > 0.0 && l.is_finite())) {
        bail!("lambda must be positive");
    }
    let out = solve_from_manifest(
        &a.manifest,
        method,
        SolveOverrides { lambda: a.lambda, max_iters: a.max_iters },
        a.reference.as_deref(),
    )
    .with_context(|| format!("solving from {}", a.manifest.display()))?;
    save_wav(&a.output, &out.estimate, a.format.into())?;
    if let Some(trace) = &a.trace {
        write_trace_file(&out.run, trace)?;
    }
    info!("feasibility gap: coarse {:e}, fine {:e}", out.run.feasibility_gap.coarse, out.run.feasibility_gap.fine);
    match (out.run.best_sdr(), out.run.best_sdr_iter) {
        (Some(s), Some(i)) => println!("wrote {} (best SDR {s:.2} dB at iteration {i})", a.output.display()),
        _ => println!("wrote {} after {} iterations", a.output.display(), out.run.iterations()),
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Simulate(a) => simulate_cmd(a),
        Command::Reconstruct(a) => solve_cmd(a, Method::DualBranch),
        Command::Baseline(a) => solve_cmd(a, Method::Baseline),
        Command::Grid { config, output, workers } => {
            let mut cfg = ExperimentConfig::load(&config).with_context(|| format!("loading {}", config.display()))?;
            if let Some(o) = output {
                cfg.output_dir = o;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let results = run_grid(&cfg)?;
            let (r, avg) = results.write_to_dir(&cfg.output_dir)?;
            println!("wrote {} and {}", r.display(), avg.display());
            Ok(())
        }
        Command::Sdr { reference, estimate } => {
            println!("{:.4}", sdr_files(&reference, &estimate)?);
            Ok(())
        }
        Command::Synth { output, count, seed, seconds, sample_rate } => {
            let params = SynthParams { seconds, sample_rate_hz: sample_rate, ..Default::default() };
            let paths = synth_to_dir(&params, seed, count, &output, WavFormat::Float32)?;
            println!("wrote {} signals to {}", paths.len(), output.display());
            Ok(())
        }
    }
}
