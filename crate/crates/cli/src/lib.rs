//! Command-line frontend: file formats, reports and command implementations
//! behind the `sspread` binary.

pub mod commands;
pub mod io;
pub mod report;

use sspread::harness::HarnessError;
use sspread::ineq::IneqError;
use sspread::major::MajorError;
use sspread::spectra::SpectraError;
use sspread::LinalgError;

use crate::io::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("mode violation: {0}")]
    Mode(String),
    #[error("{0}")]
    UnknownId(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Mode(_) => 3,
            CliError::UnknownId(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Input(_) => "input",
            CliError::Mode(_) => "mode",
            CliError::UnknownId(_) => "unknown_id",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NoConvergence { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Linalg(l) => l.into(),
            SpectraError::HorizonTooSmall { .. } | SpectraError::UnknownMode(_) => {
                CliError::Mode(e.to_string())
            }
            SpectraError::InvalidSpec(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<MajorError> for CliError {
    fn from(e: MajorError) -> Self {
        match e {
            MajorError::Spectra(s) => s.into(),
            MajorError::HorizonMismatch { .. } | MajorError::ModeError { .. } => {
                CliError::Mode(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<IneqError> for CliError {
    fn from(e: IneqError) -> Self {
        match e {
            IneqError::Linalg(l) => l.into(),
            IneqError::Spectra(s) => s.into(),
            IneqError::Major(m) => m.into(),
            IneqError::UnsupportedMode(_) => CliError::Mode(e.to_string()),
            IneqError::UnknownInequality(_) => CliError::UnknownId(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Ineq(i) => i.into(),
            HarnessError::Linalg(l) => l.into(),
            HarnessError::Spectra(s) => s.into(),
            HarnessError::Major(m) => m.into(),
            HarnessError::UnknownExample(_)
            | HarnessError::UnknownInequality(_)
            | HarnessError::UnknownKind(_) => CliError::UnknownId(e.to_string()),
            HarnessError::InvalidSpec(_) => CliError::Input(e.to_string()),
        }
    }
}

