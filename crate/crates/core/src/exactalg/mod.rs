//! Exact coefficient arithmetic, sparse graded polynomials and truncated
//! bivariate power series.

pub mod expr;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod upoly;

pub use expr::{parse_expr, parse_poly, Expr};
pub use poly::{poly_arith, ArithOp, Monomial, Poly, Universe, Var, WeightedDegree};
pub use scalar::{format_rational, parse_rational, ExtField, Scalar};
pub use series::{series_newton_root, Series2};
