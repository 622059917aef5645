use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// Resource-cap failures are kept apart from mathematical and input failures
/// so front ends can report them distinctly; see [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("symmetry violation: m({i},{j}) = {ij} but m({j},{i}) = {ji}")]
    Asymmetric {
        i: usize,
        j: usize,
        ij: String,
        ji: String,
    },
    #[error("diagonal entry m({i},{i}) must be 1, found {found}")]
    Diagonal { i: usize, found: String },
    #[error("off-diagonal label m({i},{j}) = {label} is below 2")]
    LabelTooSmall { i: usize, j: usize, label: u64 },
    #[error("index {index} is outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("odd label at ({i},{j}): m = {label}")]
    OddLabel { i: usize, j: usize, label: u64 },
    #[error("pair ({i},{j}) is not in B (label is infinite or i >= j)")]
    NotInB { i: usize, j: usize },
    #[error("word has nonzero abelianization, so it is not in [F,F]")]
    NotInCommutator,
    #[error("word is not in R: {0}")]
    WarrantViolated(String),
    #[error("elements do not commute: {0}")]
    NotCommuting(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{what} exceeds the configured cap of {limit}")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

/// Coarse classification used for machine-readable error records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Mathematical,
    Resource,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Input => "input",
            ErrorKind::Mathematical => "mathematical",
            ErrorKind::Resource => "resource",
        }
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. }
            | Error::Asymmetric { .. }
            | Error::Diagonal { .. }
            | Error::LabelTooSmall { .. }
            | Error::IndexOutOfRange { .. }
            | Error::OddLabel { .. }
            | Error::InvalidArgument(_)
            | Error::InvalidTable(_) => ErrorKind::Input,
            Error::NotInB { .. }
            | Error::NotInCommutator
            | Error::WarrantViolated(_)
            | Error::NotCommuting(_) => ErrorKind::Mathematical,
            Error::Overflow(_) | Error::ResourceCap { .. } => ErrorKind::Resource,
        }
    }

    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
