use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// `Precondition` covers every argument-domain violation (bad discriminant,
/// parameter outside the desk-scale budget, truncation height beyond a
/// dataset's completeness bound). `Pole` is a separate variant because
/// callers sweeping a grid commonly want to skip poles rather than abort.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pole of {function} at s = {re} + {im}i")]
    Pole {
        function: &'static str,
        re: f64,
        im: f64,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LabError {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        LabError::Precondition(msg.into())
    }

    /// True for errors caused by the caller's arguments rather than by the
    /// library itself.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            LabError::Precondition(_) | LabError::Pole { .. } | LabError::Parse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
