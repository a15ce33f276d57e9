pub mod algebra;
pub mod arith;
pub mod certificate;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod format;
pub mod identities;
pub mod operators;
pub mod report;

pub use error::{Error, Result};
