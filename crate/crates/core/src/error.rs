use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of generators must be between 2 and 9, got {0}")]
    InvalidContext(u32),

    #[error("context mismatch: O_{left} vs O_{right}")]
    ContextMismatch { left: u8, right: u8 },

    #[error("letter {letter} out of range for O_{n}")]
    LetterOutOfRange { letter: u32, n: u8 },

    #[error("element is not unitary")]
    NotUnitary,

    #[error("not a sum of words: {0}")]
    NotSumOfWords(String),

    #[error("pair ({alpha}, {beta}) has degree {degree}, outside {{-1, 0, +1}}")]
    DegreeOutOfRange {
        alpha: String,
        beta: String,
        degree: i32,
    },

    #[error("psi_1 is not constant on overlap class {class}: labels {labels:?}")]
    Psi1NotConstant { class: String, labels: Vec<i32> },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("json schema error: {0}")]
    Schema(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
}
