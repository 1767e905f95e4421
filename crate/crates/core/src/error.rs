use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials over different variable lists were combined.
    RingMismatch,
    UnknownVariable(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Rank mismatch between two generic Weyl algebra elements.
    RankMismatch {
        left: usize,
        right: usize,
    },
    Parse {
        position: usize,
        message: String,
    },
    UnknownIdentifier(String),
    /// A restricted operator sent a source element outside the target span.
    OutsideSpan {
        index: usize,
    },
    /// The target basis of a restriction is linearly dependent.
    DependentBasis,
    InvalidParameters(String),
    InvalidPair(String),
    NotSquare {
        rows: usize,
        cols: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "polynomials live in different rings"),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::RankMismatch { left, right } => {
                write!(f, "Weyl algebra rank mismatch: {left} vs {right}")
            }
            Error::Parse { position, message } => {
                write!(f, "syntax error at position {position}: {message}")
            }
            Error::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            Error::OutsideSpan { index } => {
                write!(f, "image of source element #{index} leaves the target span")
            }
            Error::DependentBasis => write!(f, "target basis is linearly dependent"),
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::InvalidPair(msg) => write!(f, "invalid operator pair: {msg}"),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
        }
    }
}

impl core::error::Error for Error {}
