use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("name `{0}` is already declared")]
    DuplicateName(String),
    #[error("operation `{op}` already has unit `{unit}`")]
    OpAlreadyHasUnit { op: String, unit: String },
    #[error("unit `{0}` must be declared for at least one operation")]
    EmptyOpSet(String),
    #[error("inconsistent signature: {0}")]
    InconsistentSignature(String),

    #[error("`{symbol}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `?{0}` is not bound")]
    UnboundVariable(String),
    #[error("smart constructor called with no items")]
    InternalSizeZero,
    #[error("subject term contains variables")]
    SubjectNotGround,
    #[error("pattern is headed by a variable and matches everywhere")]
    TrivialPattern,
    #[error("no interpretation for `{0}`")]
    MissingInterpretation(String),

    #[error("no match{}", if *.warning { " (solutions whose instance is a unit were rejected)" } else { "" })]
    NoMatch { warning: bool },
    #[error("selection {occurrence}/{substitution} out of range")]
    SelectionOutOfRange {
        occurrence: usize,
        substitution: usize,
    },
    #[error("ill-formed equation: {0}")]
    IllFormedEquation(String),
    #[error("matcher proposed a solution the checker rejects: {0}")]
    Unverified(String),
    #[error("step {index}: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("{line}:{column}: cannot mix `{first}` and `{second}` without parentheses")]
    MixedInfix {
        line: usize,
        column: usize,
        first: String,
        second: String,
    },
}
