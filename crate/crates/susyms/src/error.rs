use thiserror::Error;

/// Errors raised by parsing, file handling and command execution.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{source} (at {line}:{column})")]
    Located {
        line: usize,
        column: usize,
        #[source]
        source: susyms_core::Error,
    },
    #[error(transparent)]
    Core(#[from] susyms_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
}

impl Error {
    /// Errors caused by bad input rather than by a failed verification.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Syntax { .. } | Error::Usage(_) | Error::Io { .. } => true,
            Error::Located { source, .. } | Error::Core(source) => matches!(
                source,
                susyms_core::Error::Usage(_)
                    | susyms_core::Error::Parity(_)
                    | susyms_core::Error::Unbound(_)
                    | susyms_core::Error::UnsupportedSubalgebra(_)
            ),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
