//! Exact path-width of matroids, with optimal decompositions recovered by
//! self-reduction from a decision procedure.

pub mod cli;
pub mod error;
pub mod extension;
pub mod field;
pub mod linalg;
pub mod matroid;
pub mod pathwidth;
pub mod propcheck;
pub mod selfreduce;

pub use error::{Error, Result};
