//! Exact arithmetic: Laurent polynomials, rational expressions and truncated
//! power series in `t`.

pub mod laurent;
pub mod rational;
pub mod series;

pub use laurent::{rat, Exponent, LaurentPoly, VarList};
pub use rational::{substitute, RationalExpr};
pub use series::{factorial, pairing_in_var, ts_exp, SeriesCoeff, TSeries};
