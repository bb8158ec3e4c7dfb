pub mod arith;
pub mod certify;
pub mod circle;
pub mod cli;
pub mod duality;
pub mod error;
pub mod groups;
pub mod nonabelian;
pub mod sequences;

pub use error::{Error, Result};
