use thiserror::Error;

use crate::exactgeom::Circuit;

#[derive(Debug, Clone, Error)]
pub enum HypersubError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("invalid tile: {0}")]
    InvalidTile(String),
    #[error("level {k} out of range for n = {n}")]
    LevelOutOfRange { k: usize, n: usize },
    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("tiles are not separated: circuit {0}")]
    NotSeparated(Circuit),
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, HypersubError>;
