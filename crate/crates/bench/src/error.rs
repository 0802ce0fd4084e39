use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    /// Invalid configuration; `field` names the offending key.
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("{context}: {source}")]
    Run {
        context: String,
        #[source]
        source: kregret::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl BenchError {
    pub fn run(context: impl Into<String>, source: kregret::Error) -> Self {
        BenchError::Run {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 2 for configuration errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config { .. } => 2,
            _ => 1,
        }
    }
}

pub type BenchResult<T> = Result<T, BenchError>;
