use crate::lattice::Weight;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{a} and {b} do not form a lattice basis")]
    NotABasis { a: Weight, b: Weight },

    #[error("search exceeded its budget of {budget} nodes")]
    SizeLimit { budget: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("inconsistent fibration: {0}")]
    InconsistentFibration(String),

    #[error("the fibration admits no fiberwise signed structure")]
    NotFiberwiseSigned,

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("consecutive weights {index} and {next} are linearly dependent", next = index + 1)]
    DegenerateSequence { index: usize },

    #[error("localization produced the non-integral value {0}")]
    NonIntegral(String),

    #[error("not an equivariant class: {0}")]
    NotEquivariantClass(String),

    #[error("expected a base with 3 vertices, found {n}")]
    WrongBase { n: usize },

    #[error("base polygon is not Delzant: {0}")]
    NotDelzant(String),

    #[error("the lift requires a product-type fibration (eta = 0)")]
    NotProductType,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidGraph(_) | Error::InconsistentFibration(_) => 2,
            Error::NotFiberwiseSigned
            | Error::PreconditionUnmet(_)
            | Error::DegenerateSequence { .. }
            | Error::WrongBase { .. }
            | Error::NotDelzant(_)
            | Error::NotProductType
            | Error::NotABasis { .. } => 3,
            Error::Parse { .. } | Error::Semantic(_) => 4,
            Error::SizeLimit { .. } => 5,
            Error::NonIntegral(_) | Error::NotEquivariantClass(_) | Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
