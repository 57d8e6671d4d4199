//! Exact combinatorics of 3-valent GKM graphs fibering over 2-valent GKM graphs.

pub mod budget;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod fibration;
pub mod graph;
pub mod lattice;
pub mod realization;
pub mod signed;

pub use budget::Budget;
pub use error::{Error, Result};
