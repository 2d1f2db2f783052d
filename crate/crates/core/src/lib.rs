pub mod error;
pub mod gen;
pub mod adams;
pub mod adams_ss;
pub mod cli;
pub mod complex;
pub mod homalg;
pub mod json;
pub mod linalg;
pub mod qfun;

pub use error::{Error, Result};
