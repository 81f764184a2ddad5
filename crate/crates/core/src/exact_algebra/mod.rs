//! Exact arithmetic: big rationals, sparse Laurent polynomials, rational
//! functions and truncated q-series.

mod frac;
mod gcd;
mod matrix;
mod poly;
mod qseries;
mod ratfunc;
mod vars;

pub use frac::FactoredFrac;
pub use gcd::{normalized, poly_gcd, poly_lcm};
pub use matrix::{Matrix, RingElem};
pub use poly::{poly_arith, Exp, PolyOp, SparsePoly};
pub use qseries::{qseries_expand, QExpr, QSeries};
pub use ratfunc::{ratfunc_arith, RatFunc, RatOp, GCD_THRESHOLD};
pub use vars::Vars;

/// Arbitrary-precision rational; always stored reduced with positive denominator.
pub type Q = num_rational::BigRational;

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `n/d` as a rational.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
