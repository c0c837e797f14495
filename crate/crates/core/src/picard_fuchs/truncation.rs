use super::ode::solve_series;
use super::preset::{series_from_moments, CurvePreset};
use crate::error::{Error, Result};
use crate::exact_arith::{FFElem, QuadElem};
use crate::poly_series::{Poly, Series};

/// Output of the truncation path at one prime, branch and component.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationResult {
    /// `y mod p` truncated at degree `d`, in `t`.
    pub alpha: Poly<FFElem>,
    pub d: usize,
    /// Square-free part of `alpha(1/J) J^d`.
    pub ph: Poly<FFElem>,
}

/// The normalized solution `y = 1 + O(t)` of component `j` to `order`
/// terms: from the operator when one is known, otherwise recovered from
/// the listed moments.
pub fn solution_series(preset: &CurvePreset, j: usize, order: usize) -> Result<Series<QuadElem>> {
    if let Some(ode) = preset.ode(j)? {
        return solve_series(&ode, order);
    }
    let g = preset.moments(j, order)?;
    series_from_moments(&g, preset, j)
}

/// Partial Hasse polynomial from the Dwork factor of `y`.
///
/// `y` needs at least `p` terms. The terms of degree `d+1..p-1` must
/// vanish mod the prime, so that `y / alpha = 1 mod t^p`.
pub fn truncation_path(
    preset: &CurvePreset,
    p: u64,
    j: usize,
    branch: usize,
    y: &Series<QuadElem>,
) -> Result<TruncationResult> {
    let ctx = preset.context(p)?;
    if branch >= ctx.branch_count() {
        return Err(Error::Invalid(format!("branch {branch} out of range for p = {p}")));
    }
    let d = preset.truncation_degree(p, j)?;
    if d < 0 || d as u64 >= p {
        return Err(Error::TruncationUnavailable { p, j, degree: d });
    }
    let d = d as usize;
    let p_us = p as usize;
    if y.order() < p_us {
        return Err(Error::Precision { needed: p_us, available: y.order() });
    }
    let reduced: Vec<FFElem> = y.coeffs()[..p_us].iter().map(|c| ctx.reduce(c, branch)).collect::<Result<_>>()?;
    if let Some(k) = (d + 1..p_us).find(|&k| !num_traits::Zero::is_zero(&reduced[k])) {
        return Err(Error::TruncationMismatch(format!(
            "coefficient of t^{k} is nonzero mod {p}, so y is not alpha mod t^p with deg alpha <= {d}"
        )));
    }
    let alpha = Poly::new(reduced[..=d].to_vec());
    let beta = Poly::new(reduced[..=d].iter().rev().cloned().collect());
    let ph = beta.squarefree_part()?;
    Ok(TruncationResult { alpha, d, ph })
}

/// [`truncation_path`] with the solution taken from the preset, checking
/// the degree against `n_{p,j}` (or `expected` when given).
pub fn truncation_ph(
    preset: &CurvePreset,
    p: u64,
    j: usize,
    branch: usize,
    expected: Option<usize>,
) -> Result<TruncationResult> {
    preset.context(p)?;
    let y = solution_series(preset, j, p as usize)?;
    let r = truncation_path(preset, p, j, branch, &y)?;
    let want = match expected {
        Some(n) => n,
        None => preset.degree_of_ph(p, j)?,
    };
    let got = r.ph.degree().unwrap_or(0);
    if got != want {
        return Err(Error::DegreeMismatch { expected: want, actual: got });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_fuchs::preset::preset;

    #[test]
    fn delta25_small_primes() {
        let pr = preset("delta-2-5").unwrap();
        let r = truncation_ph(&pr, 7, 1, 0, None).unwrap();
        assert_eq!(r.d, 3);
        assert_eq!(r.alpha, Poly::one());
        assert_eq!(r.ph.render("J"), "J");
        let r = truncation_ph(&pr, 7, 2, 0, None).unwrap();
        let f = pr.context(7).unwrap().residue_field();
        assert_eq!(r.ph, Poly::linear_root(f.from_i64(5)));
    }

    #[test]
    fn classical_supersingular() {
        let pr = preset("delta-2-3").unwrap();
        for p in [5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            truncation_ph(&pr, p, 1, 0, None).unwrap();
        }
    }

    #[test]
    fn refusals() {
        let pr = preset("delta-2-5").unwrap();
        assert!(matches!(truncation_ph(&pr, 5, 1, 0, None), Err(Error::BadPrime { .. })));
        assert_eq!(truncation_ph(&pr, 3, 1, 0, None).unwrap().ph, Poly::one());
        let w = preset("w17").unwrap();
        assert!(matches!(truncation_ph(&w, 5, 1, 0, None), Err(Error::Precision { needed: 5, available: 4 })));
        assert!(matches!(truncation_ph(&w, 3, 2, 0, None), Err(Error::TruncationUnavailable { degree: 4, .. })));
    }

    #[test]
    fn w17_at_three_from_moments() {
        let w = preset("w17").unwrap();
        let r = truncation_ph(&w, 3, 1, 0, None).unwrap();
        assert_eq!((r.d, r.ph.degree()), (0, Some(0)));
    }
}
