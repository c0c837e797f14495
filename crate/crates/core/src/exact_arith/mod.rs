//! Exact scalars: rationals, real quadratic fields, finite fields, and the
//! reduction maps between them.

pub mod ext;
pub mod finite;
pub mod prime;
pub mod quad;
pub mod rational;

pub use ext::QuadExt;
pub use finite::{FFElem, FiniteField};
pub use prime::{reduce, splitting_type, PrimeContext, Splitting};
pub use quad::QuadElem;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
