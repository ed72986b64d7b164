pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod manifest;
pub mod pipeline;
pub mod synth;
pub mod wav;

pub use error::{Error, Result};
