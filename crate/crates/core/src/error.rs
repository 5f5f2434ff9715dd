use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the library.
///
/// Variants fall into three groups that the CLI maps onto exit codes:
/// malformed input, exhausted search budgets, and failed preconditions or
/// internal consistency checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    AssociativityViolation { x: usize, y: usize, z: usize },

    #[error("element {identity} is not a two-sided identity (fails against {witness})")]
    IdentityViolation { identity: usize, witness: usize },

    #[error("index out of range: {0}")]
    RangeError(String),

    #[error("{what} exceeded the size budget of {cap}")]
    SizeBudgetExceeded { what: &'static str, cap: usize },

    #[error("{what} is above the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("assignment space of {needed} exceeds the budget of {cap}")]
    AssignmentBudgetExceeded { needed: u128, cap: u64 },

    #[error("parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },

    #[error("variable '{0}' is not bound by the assignment")]
    UnboundVariable(char),

    #[error("letter {0} does not occur in the word")]
    LetterAbsent(usize),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("class budget of {cap} exceeded after discovering {found} classes")]
    ClassBudgetExceeded { cap: usize, found: usize },

    #[error("could not generate an equivalent pair within {attempts} attempts")]
    GenerationBudgetExceeded { attempts: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("marker order differs between the two words at markers b{b_index}/c{c_index}")]
    AlignmentOrderMismatch { b_index: usize, c_index: usize },

    #[error("marker {index} of the {kind} factorization has no counterpart in the other word")]
    MarkerTransferFailed { kind: &'static str, index: usize },

    #[error("aligned factorization fails its own check at block {index}")]
    AlignmentCheckFailed { index: usize },

    #[error("substitution step {step} changed the image from {before} to {after}")]
    ChainStepMismatch {
        step: usize,
        before: usize,
        after: usize,
    },

    #[error("format error: {0}")]
    FormatError(String),
}

impl Error {
    /// True for errors caused by a search or construction outgrowing its cap.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SizeBudgetExceeded { .. }
                | Error::CapExceeded { .. }
                | Error::AssignmentBudgetExceeded { .. }
                | Error::ClassBudgetExceeded { .. }
                | Error::GenerationBudgetExceeded { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::FormatError(e.to_string())
    }
}
