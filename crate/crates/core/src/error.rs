use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank parameter n must be at least 2, got {0}")]
    InvalidRank(u32),

    #[error("color index {color} out of range 0..{n}")]
    InvalidColor { color: u8, n: u8 },

    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: u32, n: u8 },

    #[error("letters are not weakly increasing: {0:?}")]
    NotWeaklyIncreasing(Vec<u8>),

    #[error("an element needs at least one letter")]
    EmptyElement,

    #[error("a tensor product needs at least one factor")]
    EmptyTensor,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a separated soliton state: {0}")]
    NotSeparated(String),

    #[error("no asymptotic state within {max_steps} steps; last decomposable snapshot: {last}")]
    StepBudget { max_steps: u64, last: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Moves a parse error to another line, leaving other variants untouched.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }
}
