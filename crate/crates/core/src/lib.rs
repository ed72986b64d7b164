//! Two-branch quantized acquisition and its reconstruction.
//!
//! A signal `x` is observed twice: once at full rate through a coarse
//! quantizer (`y2`), and once through a low-pass filter, a `k`-fold
//! downsampler and a fine quantizer (`y1`). The estimate is the solution of
//!
//! ```text
//! min_x  λ‖Ax‖₁   subject to   D_k B x ∈ Γ_fine,   x ∈ Γ_coarse
//! ```
//!
//! where `A` is a Parseval-tight Gabor frame and the `Γ` are the per-sample
//! quantization cells. The problem is solved with the Condat–Vũ primal-dual
//! iteration ([`solver::cva_solve`]); a Chambolle–Pock solver for the
//! coarse-only problem ([`solver::cpa_solve`]) serves as the baseline.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, audio I/O and
//! the experiment harness live in the `pardeq` crate.
#![no_std]

extern crate alloc;

pub mod acquisition;
pub mod error;
mod fft;
pub mod filter;
pub mod frame;
pub mod metrics;
pub mod prox;
pub mod quantizer;
pub mod resample;
pub mod signal;
pub mod solver;

pub use acquisition::{simulate_acquisition, AcquisitionModel, Observations};
pub use error::{Error, Result};
pub use filter::FirFilter;
pub use frame::{Coefficients, TfFrame, WindowKind};
pub use metrics::{peak_normalize, sdr, PEAK_TARGET};
pub use quantizer::{ConsistencySet, Quantizer};
pub use resample::Downsampler;
pub use signal::{Padded, Signal};
pub use solver::{cpa_solve, cva_solve, default_steps, SolverConfig, SolverRun};

pub use num_complex::Complex64;
