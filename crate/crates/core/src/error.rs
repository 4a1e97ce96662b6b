use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("conic hull of an empty list has no ambient dimension")]
    EmptyHull,

    #[error("invalid charge matrix: {0}")]
    InvalidChargeMatrix(String),

    #[error("character {0} is not effective: its semistable locus is empty")]
    NotEffective(String),

    #[error("{n} coordinates exceed the enumeration cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("invalid quasimap datum: {0}")]
    InvalidDatum(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
