pub mod arith;
pub mod error;
pub mod linalg;
pub mod qfield;

pub use error::{Error, Result};
pub mod binform;
pub mod projline;
pub mod divisor;
pub mod conic;
pub mod moduli;
pub mod decide;
pub mod construct;
pub mod json;
pub mod cli;
