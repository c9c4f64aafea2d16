use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),

    #[error("{n_qubits} qubits exceeds the limit of {max} for this operation")]
    Capacity { n_qubits: usize, max: usize },

    #[error("coefficient of `{string}` has imaginary part {imag:e}; not Hermitian")]
    NotHermitian { string: String, imag: f64 },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: &'static str },
}

pub type Result<T> = std::result::Result<T, CoreError>;

pub(crate) fn domain(msg: impl Into<String>) -> CoreError {
    CoreError::Domain(msg.into())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(CoreError::Dimension { expected, found })
    }
}
