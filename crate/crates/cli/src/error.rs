use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or inputs: exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation failed outright: exit code 1, with the error as witness.
    #[error("{0}")]
    Compute(cherednik::Error),
    /// The artifact path is part of the invocation: exit code 2.
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<cherednik::Error> for CliError {
    fn from(e: cherednik::Error) -> Self {
        use cherednik::Error as E;
        match e {
            E::Config(_)
            | E::BadGroupLabel(_)
            | E::UnsupportedType(_)
            | E::MissingDegrees(_)
            | E::MissingParabolicTable(_)
            | E::RDivisibleByN { .. }
            | E::SeparationTooSmall { .. }
            | E::OrderCapExceeded { .. } => CliError::Config(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Compute(_) => 1,
        }
    }
}
