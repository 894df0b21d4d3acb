use stgeom::Error;

pub const USAGE: u8 = 1;
pub const PARSE: u8 = 2;
pub const INVARIANT: u8 = 3;
pub const PRECONDITION: u8 = 4;
pub const INCONSISTENT_PHI: u8 = 5;
pub const JACOBI: u8 = 6;

/// An error message with the process exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: PARSE,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: PRECONDITION,
            message: message.into(),
        }
    }

    /// Prefixes the message with the location it refers to.
    pub fn context(self, at: &str) -> Self {
        Failure {
            code: self.code,
            message: format!("{at}: {}", self.message),
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::IndexOutOfRange { .. }
        | Error::DimensionMismatch(..)
        | Error::DegreeMismatch { .. }
        | Error::DegreeZero(_) => PARSE,
        Error::NotSymmetric(..)
        | Error::NotPositiveDefinite { .. }
        | Error::NotOrthonormal
        | Error::InvalidStructure(_)
        | Error::InvalidHermitian(_)
        | Error::LeeInconsistency(_)
        | Error::Internal(_) => INVARIANT,
        Error::NotSt(_) | Error::NotIntegrable | Error::Precondition(_) | Error::Unsupported(_) => {
            PRECONDITION
        }
        Error::InconsistentPhi(_) => INCONSISTENT_PHI,
        Error::Jacobi(_) => JACOBI,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}
