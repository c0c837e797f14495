//! Exact arithmetic for Atkin-type orthogonal polynomials, Padé
//! approximants of Picard–Fuchs solutions and the non-ordinary loci mod p
//! of one-parameter families with real multiplication.
//!
//! Everything is generic over a [`Field`]; the aliases below name the
//! instantiations the pipeline uses.

pub mod crosscheck;
pub mod error;
pub mod exact_arith;
pub mod fixtures;
pub mod hypergeom;
pub mod loci;
pub mod oracles;
pub mod pade_ortho;
pub mod picard_fuchs;
pub mod poly_series;
pub mod scalar;

pub use error::{Error, Result};
pub use exact_arith::{FFElem, FiniteField, PrimeContext, QuadElem, QuadExt, Rational, Splitting};
pub use poly_series::{Poly, Series};
pub use scalar::{Field, Notation};

/// Polynomials over Q.
pub type QPoly = Poly<Rational>;
/// Polynomials over Q(√D).
pub type KPoly = Poly<QuadElem>;
/// Polynomials over a residue field F_p or F_{p^2}.
pub type FpPoly = Poly<FFElem>;
pub type QSeries = Series<Rational>;
pub type KSeries = Series<QuadElem>;
pub type QMoments = pade_ortho::MomentStream<Rational>;
pub type KMoments = pade_ortho::MomentStream<QuadElem>;
