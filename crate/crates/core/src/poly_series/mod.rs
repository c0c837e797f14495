//! Dense polynomials and truncated power series over the exact scalars.

pub mod poly;
pub mod series;

pub use poly::{poly_gcd, poly_gcd_all, poly_lcm, reciprocal_poly, squarefree_part, Poly};
pub use series::{series_logderiv_ratio, Series};
