//! Exact evaluation and verification of the Wilson biorthogonal rational
//! functions, their recurrence and difference equations, the Wilson
//! rational algebra and its q-Racah limits.

pub mod error;
pub mod field;
pub mod harness;
pub mod qseries;
pub mod specalg;
pub mod wilson;

pub use error::{Error, Result};
