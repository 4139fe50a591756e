use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator count must be at least 1, got {0}")]
    ZeroGenerators(u32),
    #[error("generator index {index} outside [1, {n}]")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("word {0} is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("duplicate relator {0}")]
    DuplicateRelator(String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("assignment has {got} variables, formula has {expected}")]
    AssignmentSize { expected: usize, got: usize },
    #[error("brute force supports at most {max} variables, formula has {got}")]
    TooManyVariables { max: u32, got: u32 },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
