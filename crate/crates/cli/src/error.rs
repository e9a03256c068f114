use std::fmt;

use crate::report::Status;

/// A scenario failure, classified by the report status it maps to.
#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError { status: Status::InputError, message: msg.into() }
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status.as_str(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<l1fixed_core::Error> for CliError {
    fn from(e: l1fixed_core::Error) -> Self {
        use l1fixed_core::Error::*;
        match e {
            Input(m) => CliError { status: Status::InputError, message: m },
            Precondition(m) => CliError { status: Status::PreconditionFailed, message: m },
            Resource(m) => CliError { status: Status::ResourceExceeded, message: m },
        }
    }
}
