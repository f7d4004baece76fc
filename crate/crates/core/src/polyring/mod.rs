//! The computational substrate: exact rationals, sparse multivariate
//! polynomials, and truncated formal power series.

pub mod mpoly;
pub mod rat;
pub mod series;

pub use mpoly::{fresh_var, MPoly, Monomial, Var, SERIES_VAR};
pub use rat::Rat;
pub use series::FSeries;
