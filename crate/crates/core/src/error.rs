use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("pole at x=1")]
    PoleAtOne,
    #[error("inexact division: {0}")]
    NotDivisible(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate hyperplane")]
    DuplicateHyperplane { line: usize },
    #[error("not an intersection of hyperplanes of the arrangement")]
    InvalidFlat,
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("degree sum mismatch: degrees sum to {got}, multiplicities sum to {expected}")]
    DegreeSumMismatch { expected: u64, got: u64 },
    #[error("not an order ideal")]
    NotOrderIdeal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("A(Ψ) not certified free: {0}")]
    NotCertifiedFree(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
