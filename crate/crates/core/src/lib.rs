//! Exact freeness decisions and certificates for hyperplane arrangements.

pub mod arr;
pub mod error;
pub mod exact;
pub mod freeness;
pub mod hilbert;
pub mod lattice;
pub mod logmod;
pub mod weyl;

pub use error::{Error, Result};
