use std::fmt;

/// Failure of a command, split by exit code: `Usage` (2) covers bad input
/// and I/O, `Domain` (3) a violated invariant reported by the library.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<oos_core::Error> for CliError {
    fn from(e: oos_core::Error) -> Self {
        match e {
            oos_core::Error::Serialization(m) => CliError::Usage(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}
