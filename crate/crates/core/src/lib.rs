pub mod acceptance;
pub mod associate;
pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod fan;
pub mod functional;
pub mod gh;
pub mod point;
pub mod record;
pub mod seq;

pub use error::{Error, Result};

/// Naturals are machine words; arithmetic that would wrap reports
/// [`Error::Overflow`] instead.
pub type Nat = u64;
