//! Exact computer algebra for Macdonald polynomials, affine Hecke operators,
//! quantum affine sl2 modules, level-1 characters and Fock-space vertex
//! operators.

pub mod characters;
pub mod error;
pub mod exact_algebra;
pub mod fault;
pub mod fock;
pub mod hecke;
pub mod quantum;
pub mod report;
pub mod symfun;

pub use error::{Error, Result};
pub use exact_algebra::{Matrix, QSeries, RatFunc, SparsePoly, Vars, Q};
pub use fault::Fault;
pub use report::CheckReport;
