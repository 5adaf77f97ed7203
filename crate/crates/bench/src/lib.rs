//! Benchmark families, fixtures, DOT interchange and the experiment harness
//! around `ets-core`.

pub mod dot;
pub mod error;
pub mod experiment;
pub mod families;
pub mod fixtures;
pub mod model;
pub mod strategy;

pub use error::{BenchError, Result};
