use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("invalid length: expected {expected}, got {actual}")]
    InvalidLength { expected: usize, actual: usize },
    #[error("length {len} is not a multiple of {factor}")]
    NotMultiple { len: usize, factor: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("sample {index} ({value}) is not a reproduction level of the {bits}-bit quantizer")]
    InvalidObservation { index: usize, value: f64, bits: u32 },
    #[error("solver configuration: {0}")]
    Config(&'static str),
}
