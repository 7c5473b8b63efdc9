use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched discriminants: {left} vs {right}")]
    MismatchedDiscriminant { left: Rational, right: Rational },

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    /// `ab = -4` makes the discriminant vanish, so `alpha == beta`.
    #[error("Binet form is degenerate: ab = -4 gives alpha = beta")]
    BinetDegenerate,

    /// A Binet evaluation left a nonzero coefficient on the square root.
    /// This always indicates a transcription bug in a formula.
    #[error("irrational residue in entry {entry} at index {index}")]
    IrrationalResidue { index: u64, entry: &'static str },

    #[error("invalid rational literal {0:?}")]
    Parse(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
