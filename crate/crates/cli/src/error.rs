use thiserror::Error;

/// Failure of a CLI run; the prefix is the stable error class.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: unknown key, bad syntax, unparsable value.
    #[error("E_PARSE at {at}: {message}")]
    Parse { at: String, message: String },

    /// Well-formed value outside its admissible range.
    #[error("E_RANGE at {at}: {message}")]
    Range { at: String, message: String },

    /// Negativity, non-convergence or another numerical breakdown.
    #[error("E_NUMERIC at {at}: {source}")]
    Numerical { at: String, source: wigfid::Error },

    #[error("E_IO at {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Range { .. } => 2,
            CliError::Numerical { .. } => 3,
            CliError::Io { .. } => 1,
        }
    }

    /// Parameter and dispatch errors are configuration errors; everything
    /// else raised by a cell is numerical.
    pub fn from_core(at: impl Into<String>, err: wigfid::Error) -> Self {
        let at = at.into();
        match err {
            wigfid::Error::InvalidParameter { .. } | wigfid::Error::WrongSystem { .. } => CliError::Range {
                at,
                message: err.to_string(),
            },
            _ => CliError::Numerical { at, source: err },
        }
    }
}
