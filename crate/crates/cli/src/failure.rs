use std::fmt;

use majorana::Error;

pub const IO: u8 = 2;
pub const VALIDATION: u8 = 3;
pub const CONVERGENCE: u8 = 4;
pub const DIMENSION: u8 = 5;
pub const SIZE: u8 = 6;
pub const RESIDUAL: u8 = 7;

/// A message for stderr and the process exit code that goes with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn io(path: &str, err: impl fmt::Display) -> Self {
        Failure::new(IO, format!("{path}: {err}"))
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Failure::new(VALIDATION, message)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Argument(_) | Error::Validation(_) => VALIDATION,
            Error::Convergence { .. } | Error::Numerical(_) => CONVERGENCE,
            Error::Size { .. } => SIZE,
        };
        Failure::new(code, err.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
