pub mod error;
pub mod experiment;
pub mod linalg;
pub mod measurement;
pub mod sweep;
pub mod thermo;

pub use error::{Error, Result};
