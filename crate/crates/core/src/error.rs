use thiserror::Error;

use crate::cli::expr::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a coordinate denominator vanishes at every sampled point")]
    DenominatorVanishes,
    #[error("no sampled point attains the generic ranks; increase --samples")]
    NonGenericPoint,
    #[error("parametrization is not an immersion: d_1 = {d1} < k = {k}")]
    NotImmersion { d1: usize, k: usize },
    #[error("constant-coefficient Laplace equations need polynomial coordinates")]
    UnsupportedRationalCoords,
    #[error("the osculating space of order {t} fills the ambient space; its dual variety is empty")]
    EmptyDual { t: u32 },
    #[error("degree or variable mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unknown variety `{0}`")]
    UnknownVariety(String),
    #[error("invalid parametrization: {0}")]
    InvalidParametrization(String),
    #[error("invalid order {0}")]
    InvalidOrder(u32),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
