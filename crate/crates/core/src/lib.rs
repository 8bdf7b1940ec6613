pub mod arith;
pub mod codes;
pub mod error;
pub mod extension;
pub mod fusion;
pub mod lattice;
pub mod ledger;
pub mod modular;
pub mod orthogonal;
pub mod report;
pub mod twist;
pub mod verify;

pub use error::{Error, Result};
