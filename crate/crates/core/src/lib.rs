pub mod bounds;
pub mod cli;
pub mod error;
pub mod graphs;
pub mod numeric;
pub mod series;
pub mod solvers;
pub mod transforms;

pub use error::{Error, Result};
