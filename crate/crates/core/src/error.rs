use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Indices carried by variants are 1-based, matching the labels `x1..xn`
/// that users see.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring spec mismatch: {0}")]
    SpecMismatch(String),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("not a unit at x{index}")]
    NotAUnitAt { index: usize },

    #[error("unsupported query: {0}")]
    Unsupported(String),

    #[error("not a poset: x{0} and x{1} lie on a cycle")]
    NotAPoset(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported pair: x{0} is not below x{1}")]
    UnsupportedPair(usize, usize),

    #[error("algebra context mismatch")]
    ContextMismatch,

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("element is not central")]
    NotCentral,

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("support error: coefficient on incomparable pair e[{0},{1}]")]
    Support(usize, usize),

    #[error("{}", match .line { Some(l) => format!("parse error at line {l}: {}", .msg), None => format!("parse error: {}", .msg) })]
    Parse { line: Option<usize>, msg: String },
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse { line: None, msg: msg.into() }
    }

    pub(crate) fn parse_at(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line: Some(line), msg: msg.into() }
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for errors caused by malformed textual input rather than by
    /// the mathematics of a well-formed query.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Support(..))
    }

    /// Attach a line number to a parse error that does not have one yet.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { line: None, msg } => Error::Parse { line: Some(line), msg },
            Error::Support(i, j) => Error::Parse {
                line: Some(line),
                msg: Error::Support(i, j).to_string(),
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
