use std::path::PathBuf;

use thiserror::Error;

use crate::adjacency::ParseError;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point must have at least one coordinate")]
    EmptyPoint,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("digital image must contain at least one point")]
    EmptyImage,
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("point {0} is not in the image")]
    PointNotInImage(String),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: i64, hi: i64 },
    #[error("{0}")]
    Spec(#[from] ParseError),
    #[error("adjacency c{u} needs 1 <= {u} <= dimension {dim}")]
    InvalidCu { u: usize, dim: usize },
    #[error("NP{u} needs 1 <= {u} <= {factors} factors")]
    InvalidNp { u: usize, factors: usize },
    #[error("a product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("cannot split dimension {dim} among the factors of {spec}; annotate with c<u>@<n> or give a split")]
    AmbiguousSplit { spec: String, dim: usize },
    #[error("split {split:?} does not fit {spec} on dimension {dim}")]
    BadSplit { spec: String, split: Vec<usize>, dim: usize },
    #[error("map is not total: {0} has no value")]
    PartialMap(String),
    #[error("value {value} of {point} is not in the codomain")]
    ValueOutsideCodomain { point: String, value: String },
    #[error("multivalued map assigns an empty set to {0}")]
    EmptyValueSet(String),
    #[error("spaces do not match: {0}")]
    SpaceMismatch(String),
    #[error("factor index {index} out of range for {factors} factors")]
    FactorIndex { index: usize, factors: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, Error>;
