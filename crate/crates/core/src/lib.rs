//! Exact symbolic calculus for multiplicative forms on Poisson groupoids.

pub mod algebroid;
pub mod crossed;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod models;
pub mod poly;
pub mod report;
pub mod sampling;
pub mod suites;

pub use error::{CalcError, Result};
