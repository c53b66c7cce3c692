use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty stats sample")]
    EmptyStatsSample,
    #[error("empty sample")]
    EmptySample,
    #[error("need at least 3 bins, got {0}")]
    TooFewBins(usize),
    #[error("boundaries must be strictly ascending")]
    UnsortedBoundaries,
    #[error("empty training split")]
    EmptyTrainingSplit,
    #[error("column {col} out of range (matrix has {cols} columns)")]
    ColumnOutOfRange { col: usize, cols: usize },
    #[error("duplicate column {0}")]
    DuplicateColumn(usize),
    #[error("no columns requested")]
    NoColumnsRequested,
    #[error("top-count {t} out of range 1..={n}")]
    TopCountOutOfRange { t: usize, n: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty bit vector")]
    EmptyVector,
    #[error("no {0} objects in evaluation domain")]
    EmptyClass(&'static str),
    #[error("batch size must be at least 1")]
    ZeroBatchSize,
    #[error("empty cutoff grid")]
    EmptyGrid,
    #[error("infeasible split: requested {requested_pos} positive + {requested_u_pos} reference / {requested_neg} negative, population has {pos} positive / {neg} negative")]
    InfeasibleSplit {
        requested_pos: usize,
        requested_neg: usize,
        requested_u_pos: usize,
        pos: usize,
        neg: usize,
    },
    #[error("invalid training size: {0}")]
    InvalidTrainSize(String),
    #[error("nothing to classify: every object is a training object")]
    NothingToClassify,
    #[error("no candidate indicator columns")]
    NoCics,
    #[error("empty reference set")]
    EmptyReferenceSet,
    #[error("index {index} out of range (matrix has {rows} rows)")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("labels must contain both positive and negative objects")]
    SingleClass,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("{path}: row {row}, column {col}: {msg}")]
    Parse {
        path: PathBuf,
        row: usize,
        col: String,
        msg: String,
    },
    #[error("label column {0:?} not found")]
    MissingLabelColumn(String),
    #[error("unknown step {0:?}")]
    UnknownStep(String),
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
    #[error("empty column selection")]
    EmptySelection,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
