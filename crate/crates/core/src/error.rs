use thiserror::Error;

/// Everything that can go wrong while loading, scoring, discretizing or
/// evaluating an example base.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("schema file: {0}")]
    SchemaFile(#[from] serde_json::Error),

    #[error("label column `{0}` not found in header")]
    MissingLabelColumn(String),

    #[error("row {0} does not have the same number of cells as the header")]
    RaggedRow(u64),

    #[error("row {row}, column `{column}`: missing value")]
    MissingValue { row: u64, column: String },

    #[error("row {row}, column `{column}`: `{cell}` is not a finite number")]
    UnparseableNumeric { row: u64, column: String, cell: String },

    #[error("example base has no examples")]
    EmptyBase,

    #[error("only one distinct label (`{0}`) occurs; at least two are required")]
    SingleLabel(String),

    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    #[error("example {index}: {reason}")]
    InvalidExample { index: usize, reason: String },

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("feature `{0}` is numeric; bin it first or score it with relief")]
    NumericFeatureUnsupported(String),

    #[error("feature `{0}` is not numeric")]
    NotNumeric(String),

    #[error("more than one interval scheme for feature `{0}`")]
    DuplicateScheme(String),

    #[error("relief needs exactly two labels, the base declares {0}")]
    NotBinaryLabels(usize),

    #[error("label `{0}` has no examples")]
    DegenerateBase(String),

    #[error("value and label lists differ in length ({values} vs {labels})")]
    LengthMismatch { values: usize, labels: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("at least two labels are required, got {0}")]
    TooFewLabels(usize),

    #[error("histogram is empty or sums to zero")]
    EmptyHistogram,

    #[error("feature `{0}` is in the larger subset's complement")]
    NotASubset(String),

    #[error("invalid generator spec: {0}")]
    SpecInvalid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration incompatible with base: {0}")]
    ConfigIncompatible(String),
}

/// Coarse classification of errors, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Config,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Io(_) | Csv(_) | SchemaFile(_) | MissingLabelColumn(_) | RaggedRow(_)
            | MissingValue { .. } | UnparseableNumeric { .. } | EmptyBase | SingleLabel(_)
            | InvalidSchema(_) | InvalidExample { .. } | LengthMismatch { .. } | EmptyInput
            | EmptyHistogram => ErrorClass::Data,
            InvalidParameter(_) | SpecInvalid(_) => ErrorClass::Usage,
            UnknownFeature(_) | UnknownLabel(_) | NumericFeatureUnsupported(_) | NotNumeric(_)
            | DuplicateScheme(_) | NotBinaryLabels(_) | DegenerateBase(_) | TooFewLabels(_)
            | NotASubset(_) | ConfigIncompatible(_) => ErrorClass::Config,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
