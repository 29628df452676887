use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands with incompatible dimensions (matrix shapes, word lengths,
    /// bit-vector lengths, multidegree lengths).
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A parameter outside the supported configuration space, e.g. a word
    /// length `q` outside `1..=4` or a block size `t` that is not a power
    /// of two.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A numeric argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A request refused because it would exceed the built-in combinatorial
    /// cost caps.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// An internal invariant failed while constructing an algebra.  This
    /// signals a construction bug, never bad user input.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    /// Malformed textual input (hex group elements, signed words).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
