use thiserror::Error;

/// Which polynomial of a pair an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    F,
    G,
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operand::F => f.write_str("f (coefficient a)"),
            Operand::G => f.write_str("g (coefficient c)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The leading coefficient of `f` (a) or `g` (c) is zero.
    #[error("leading coefficient of {0} must be nonzero")]
    ZeroLeadingCoefficient(Operand),
    #[error("expected a positive integer, got {0}")]
    NotPositive(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("trace does not replay: {0}")]
    InvalidTrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
