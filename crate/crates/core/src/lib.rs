pub mod colfinite;
pub mod decompose;
pub mod error;
pub mod io;
pub mod matrix;
pub mod scalars;
pub mod trace;

pub use error::{Error, Result};
pub use matrix::{CycloMatrix, Matrix};
