use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0} is odd; only even weights are supported")]
    OddWeight(i64),

    #[error("simple quotient needs a non-positive lowest weight, got {0}")]
    PositiveSimpleWeight(i64),

    #[error("truncation {have} is too small; at least {need} is required")]
    TruncationTooSmall { need: usize, have: usize },

    #[error(
        "truncation window ends at index {window} but the stabilization bound is {bound}; \
         increase truncation to at least {}", bound + 1
    )]
    Uncertified { bound: usize, window: usize },

    #[error("module family `{0}` has no closed-form ladder coefficient")]
    UnsupportedFamily(String),

    #[error(
        "relation `{0}` cannot be decided from the declared characters; declare it explicitly"
    )]
    NeedRelationDeclaration(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
