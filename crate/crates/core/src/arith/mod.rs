//! Exact scalars and 2x2 matrices: rationals, the quadratic ring
//! `Q(sqrt(D))`, and matrices over either.

mod mat2;
mod quad;
mod rational;

pub use mat2::{Mat2, Scalar};
pub use quad::QuadElement;
pub use rational::Rational;
