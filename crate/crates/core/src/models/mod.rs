//! Groupoid models where multiplicativity is decidable.

pub mod bialgebra;
pub mod closing;
pub mod cotangent;

pub use cotangent::{pullback, CotangentModel, Multiplicativity};
pub use bialgebra::{bialgebra_fixtures, bialgebra_suite, LieBialgebra};
