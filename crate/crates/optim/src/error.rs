use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown hyperparameter `{key}` for algorithm `{algorithm}`")]
    UnknownHyperparameter { algorithm: String, key: String },

    #[error("invalid value {value} for hyperparameter `{key}`: {reason}")]
    InvalidHyperparameter {
        key: String,
        value: f64,
        reason: &'static str,
    },

    #[error("budget of {budget} FEs is smaller than one population evaluation ({required} FEs)")]
    BudgetTooSmall { budget: usize, required: usize },

    #[error("bounds have {bounds} dimensions but the objective has {objective}")]
    DimensionMismatch { bounds: usize, objective: usize },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
}

pub type Result<T> = std::result::Result<T, OptimError>;
