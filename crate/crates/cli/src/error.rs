use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// `zeta * omega >= 1` somewhere in the requested parameters.
    #[error("{0}")]
    Region(String),

    #[error("verification failed: {0} check(s) out of tolerance")]
    Verification(usize),

    #[error("{0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Numerics(dspec_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Numerics(_) => 1,
            CliError::Region(_) => 2,
            CliError::Config(_) | CliError::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<dspec_core::Error> for CliError {
    fn from(e: dspec_core::Error) -> Self {
        use dspec_core::Error as E;
        match e {
            E::NoAdmissibleRegion { .. } => CliError::Region(e.to_string()),
            E::Domain { .. } | E::InvalidParameter(_) => CliError::Config(e.to_string()),
            other => CliError::Numerics(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
