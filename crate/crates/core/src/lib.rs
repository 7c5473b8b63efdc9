//! Exact arithmetic for the bi-periodic Fibonacci and Lucas numbers and
//! their 2x2 matrix sequences, with machine verification of the identities
//! that relate them.

pub mod arith;
pub mod cli;
pub mod error;
pub mod identities;
pub mod matrix_seq;
pub mod report;
pub mod sequences;
pub mod series;

pub use arith::{Mat2, QuadElement, Rational, Scalar};
pub use error::{Error, Result};
pub use sequences::{SeqParams, SeqTable};
pub use report::SuiteReport;
