use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// point at the offending input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dependent columns: lattice index is undefined")]
    DependentColumns,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("complex is not pure: face {face} of dimension {dim} is maximal but the complex has dimension {top}")]
    NotPure { face: usize, dim: usize, top: usize },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("matroid has a loop at element {0}")]
    Loop(usize),

    #[error("ambient ranks differ: relative fan has rank {fan}, Bergman fan has rank {bergman}")]
    RankMismatch { fan: usize, bergman: usize },

    #[error("invalid heights: {0}")]
    InvalidHeights(String),

    #[error("non-regular hypersurface: {0}")]
    NonRegular(String),

    #[error("cosheaf map image of face {from} does not lie in the coefficient space of face {to}")]
    NotInTarget { from: usize, to: usize },

    #[error("(1+t) does not divide the Poincare polynomial {0:?}")]
    PoincareNotDivisible(Vec<i64>),

    #[error("no transversal probe found after {0} attempts")]
    NotTransversal(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
