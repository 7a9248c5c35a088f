use std::path::PathBuf;

use novsheaf_core::barcode::BarcodeError;
use novsheaf_core::curved::CurvedError;
use novsheaf_core::metrics::MetricsError;
use novsheaf_core::modcat::ModcatError;
use novsheaf_core::novikov::NovikovError;
use novsheaf_core::persist1d::Persist1dError;

/// Anything a command can fail with. Input problems map to exit code 2,
/// mathematical ones to exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    /// A property check reported failures.
    #[error("{0}")]
    Check(String),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error(transparent)]
    Modcat(#[from] ModcatError),
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Curved(#[from] CurvedError),
    #[error(transparent)]
    Persist1d(#[from] Persist1dError),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io { .. } | Error::Parse { .. } | Error::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
