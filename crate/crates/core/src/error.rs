use std::fmt;

use thiserror::Error;

/// Position and expectation data for a parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("object contains a unit: {0}")]
    UnitPresent(String),
    #[error("deleting the letters removes every letter of {0}")]
    AllLettersDeleted(String),
    #[error("composition mismatch at {path}: {left} vs {right}")]
    CompositionMismatch {
        path: String,
        left: String,
        right: String,
    },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("not permutation equivalent: {0} and {1}")]
    NotPermutationEquivalent(String, String),
    #[error("object is not letterless: {0}")]
    NotLetterless(String),
    #[error("object is not pure: {0}")]
    NotPure(String),
    #[error("object is not diversified: {0}")]
    NotDiversified(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("term does not start at the expected object: {0}")]
    SourceMismatch(String),
    #[error("search limit exceeded after {0} nodes")]
    LimitExceeded(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("coherence guard failed: {0}")]
    CoherenceGuardFailed(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("duplicate letters: {0}")]
    DuplicateLetters(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
