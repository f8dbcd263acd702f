use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown value `{token}` for nominal attribute `{attribute}`")]
    UnknownNominal {
        line: usize,
        attribute: String,
        token: String,
    },

    #[error("line {line}: expected {expected} values, found {found}")]
    Arity {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: `{token}` is not a finite number (attribute `{attribute}`)")]
    NonFinite {
        line: usize,
        attribute: String,
        token: String,
    },

    #[error("line {line}: cannot parse `{token}` as a number (attribute `{attribute}`)")]
    InvalidNumber {
        line: usize,
        attribute: String,
        token: String,
    },

    #[error("header mismatch: expected [{expected}], found [{found}]")]
    HeaderMismatch { expected: String, found: String },

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("line {line}: class value is missing")]
    MissingClass { line: usize },

    #[error("attribute `{0}` has no non-missing values; cannot compute a replacement")]
    NoStatistic(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("class `{0}` has no instances")]
    ClassAbsent(String),

    #[error("resampling: {0}")]
    Resample(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("training diverged: non-finite loss at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
