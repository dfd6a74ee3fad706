use std::fmt;
use std::process::ExitCode;

/// Failure categories with stable process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Some validation check failed (exit 1).
    ChecksFailed(usize),
    /// Invalid or missing arguments, or a request the model cannot answer (exit 2).
    Usage(String),
    /// Adaptive quadrature did not converge (exit 3).
    Quadrature(String),
    /// Reading or writing a file failed, or a data file was malformed (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Quadrature(_) => 3,
            CliError::Io(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::ChecksFailed(n) => write!(f, "{n} validation check(s) failed"),
            CliError::Usage(m) | CliError::Quadrature(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<casimir_core::Error> for CliError {
    fn from(e: casimir_core::Error) -> Self {
        use casimir_core::Error as E;
        match e {
            E::Quadrature { .. } => CliError::Quadrature(e.to_string()),
            E::Io(_) | E::Table(_) => CliError::Io(e.to_string()),
            E::Domain { .. } | E::UnsupportedArgument { .. } | E::UnsupportedModel { .. } => {
                CliError::Usage(e.to_string())
            }
        }
    }
}
