//! Moment functionals and the objects they determine: Padé approximants,
//! monic orthogonal polynomials, continued fractions and three-term
//! recurrences.

pub mod moments;
pub mod ortho;
pub mod pade;

pub use moments::{combined_moments, MomentStream, Provider};
pub use ortho::{
    cf_coefficients, gram_schmidt, jfraction_recurrence, norms, orthogonal_polys_cf, polys_from_recurrence, recurrence_from_cf, CFCoeffs,
    ThreeTerm,
};
pub use pade::{bareiss_solve, expand_ratio, pade_denominator, pade_euclid, pade_numerator};
