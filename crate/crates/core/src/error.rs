use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("H_X row {row_x} is not orthogonal to H_Z row {row_z}")]
    Orthogonality { row_x: usize, row_z: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("check matrix has rank {rank} but {rows} rows; row-reduce it to full rank first")]
    RankDeficient { rank: usize, rows: usize },

    #[error("random generation failed after {attempts} attempts (seed {seed})")]
    GenerationFailed { seed: u64, attempts: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
