use bncontrol::BnError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read or write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed file: {0}")]
    Malformed(String),
    #[error("bitstring '{text}' has length {found}, expected {expected}")]
    BitLength { text: String, expected: usize, found: usize },
    #[error("{0}")]
    Bn(#[from] BnError),
}

impl CliError {
    /// 2 usage, 3 file, 4 network or dimensions, 5 bitstring length, 6 size limit, 7 algorithm.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Malformed(_) => 3,
            CliError::BitLength { .. } => 5,
            CliError::Bn(e) => match e {
                BnError::DimensionMismatch { .. }
                | BnError::IndexOutOfRange { .. }
                | BnError::InvalidRule { .. }
                | BnError::InvalidNetwork(_)
                | BnError::FamilyMismatch(_)
                | BnError::NotXor(_) => 4,
                BnError::OracleLimit { .. } => 6,
                BnError::InvalidParameter(_) => 2,
                _ => 7,
            },
        }
    }
}
