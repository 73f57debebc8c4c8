pub mod cohomology;
pub mod connection;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod localization;
pub mod moment;
pub mod paper_check;
pub mod parse;
pub mod poly;
pub mod strata;

pub use error::{GkmError, Result};
