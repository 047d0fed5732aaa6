use fairalloc::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInstance(_) | Error::InvalidAllocation(_) | Error::CapExceeded { .. } => {
                CliError::Input(e.to_string())
            }
            Error::MalformedLp(_) | Error::CyclicInput | Error::MixedSignShare { .. } | Error::Internal(_) => {
                CliError::Internal(e.to_string())
            }
        }
    }
}
