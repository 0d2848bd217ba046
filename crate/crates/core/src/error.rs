use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count m = {0} outside supported range 1..=16")]
    UnsupportedM(usize),

    #[error("channel index {u} does not fit in m = {m} bits")]
    IndexOutOfRange { u: u64, m: usize },

    #[error("monomials over different variable counts ({0} vs {1})")]
    MismatchedM(usize, usize),

    #[error("m = {m} exceeds the cap of {cap}")]
    OverCap { m: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial of degree {degree} does not fit in size {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("bisection bracket failed: {0}")]
    Bracket(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
