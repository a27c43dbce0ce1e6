use kummer_torsion::Error;

/// Failure classes, one per process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// The computation itself could not finish (exit 1).
    Math(String),
    /// Bad curve, file or flag (exit 2).
    Input(String),
    /// A formula pack failed validation (exit 3).
    Pack(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
            CliError::Pack(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Math(m) | CliError::Input(m) | CliError::Pack(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidInput(_)
            | Error::PackParse { .. }
            | Error::GoodPrimeRequired(_)
            | Error::MissingPack(_)
            | Error::UnsupportedModel(_) => CliError::Input(msg),
            Error::PackValidation(_) => CliError::Pack(msg),
            _ => CliError::Math(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
