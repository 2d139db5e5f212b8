pub mod error;
pub mod field;
pub mod hypersurface;
pub mod dwork;
pub mod zeta;
pub mod cache;
pub mod cli;

pub use error::{Error, Result};
