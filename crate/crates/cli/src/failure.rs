use std::fmt;

/// Command failure, classified by process exit status.
#[derive(Debug)]
pub enum Failure {
    /// Rejected parameters, configuration or command-line values.
    Invalid(anyhow::Error),
    /// Unreadable input or unwritable output.
    Io(anyhow::Error),
    /// Number of failed checks in a verification run.
    Verification(usize),
}

pub type CliResult<T> = Result<T, Failure>;

impl Failure {
    pub fn invalid(msg: impl fmt::Display) -> Self {
        Failure::Invalid(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(e) | Failure::Io(e) => write!(f, "{e:#}"),
            Failure::Verification(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<eom_core::Error> for Failure {
    fn from(e: eom_core::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

pub(crate) trait IoContext<T> {
    fn io_context(self, what: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T> IoContext<T> for std::io::Result<T> {
    fn io_context(self, what: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|e| Failure::Io(anyhow::Error::new(e).context(what())))
    }
}
