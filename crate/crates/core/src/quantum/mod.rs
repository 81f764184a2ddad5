//! Finite-dimensional representations: R-matrices, evaluation modules,
//! Drinfeld polynomials and the level-0 action.

mod drinfeld;
mod level0;
mod modules;
mod rmatrix;

pub use drinfeld::*;
pub use level0::*;
pub use modules::*;
pub use rmatrix::*;
