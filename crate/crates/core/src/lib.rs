pub mod cli;
pub mod complex;
pub mod corpus;
pub mod domination;
pub mod error;
pub mod graphs;
pub mod hypergraph;
pub mod lp;
pub mod matrix;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
