use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("input has no header row")]
    MissingHeader,
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("empty column name at position {0}")]
    EmptyColumnName(usize),
    #[error("ragged row at line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("no axis columns selected")]
    NoAxes,
    #[error("missing value in column `{column}` at row {row}")]
    MissingValue { row: usize, column: String },
    #[error("non-numeric value `{value}` in column `{column}` at row {row}")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },
    #[error("no rows left after dropping incomplete rows")]
    EmptyAfterDrop,
    #[error("table has no data rows")]
    EmptyTable,
    #[error("column `{0}` has zero variance")]
    ZeroVariance(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("color column has {found} values but the cover has {expected} points")]
    ColorLengthMismatch { expected: usize, found: usize },
    #[error("quantile of an empty set")]
    EmptyInput,
    #[error("percentile {0} outside (0, 100)")]
    InvalidPercentile(f64),
    #[error("missing quantiles for ball {0}")]
    MissingQuantiles(usize),
    #[error("merged table has no `ball` column")]
    MissingBallColumn,
    #[error("invalid ball id `{value}` at row {row}")]
    InvalidBallId { row: usize, value: String },
    #[error("column name `{0}` is reserved in the merged output")]
    ReservedColumn(String),
    #[error("unknown dataset `{0}` (expected `gauss` or `x`)")]
    UnknownDataset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for filesystem failures, as opposed to problems with the data or arguments.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
