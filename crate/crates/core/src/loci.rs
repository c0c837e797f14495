use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact_arith::{FFElem, PrimeContext, QuadElem, Splitting};
use crate::pade_ortho::{combined_moments, pade_denominator};
use crate::picard_fuchs::{solution_series, truncation_path, CurvePreset};
use crate::poly_series::Poly;

/// One component's contribution at one prime above `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialHasse {
    pub j: usize,
    pub n: usize,
    /// Atkin polynomial `A_{j,n}` over `K`.
    pub a: Poly<QuadElem>,
    /// Its reduction, the partial Hasse polynomial.
    pub ph: Poly<FFElem>,
}

/// Assembled loci at one prime above `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchLocus {
    pub branch: usize,
    pub components: Vec<PartialHasse>,
    pub no: Poly<FFElem>,
    pub sp: Poly<FFElem>,
    pub ss: Option<Poly<FFElem>>,
    /// Per component: `Some(true)` when the truncation path ran and agreed.
    pub truncation: Vec<Option<bool>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Locus {
    pub preset: String,
    pub p: u64,
    pub d: u64,
    pub splitting: Splitting,
    pub branches: Vec<BranchLocus>,
}

/// `A_{j,n}` from the Padé denominator of `Phi_j` and its reduction at the
/// chosen prime above `p`. `degree` overrides the preset's `n_{p,j}`.
pub fn partial_hasse(
    preset: &CurvePreset,
    ctx: &PrimeContext,
    j: usize,
    branch: usize,
    degree: Option<usize>,
) -> Result<PartialHasse> {
    let n = match degree {
        Some(n) => n,
        None => preset.degree_of_ph(ctx.p(), j)?,
    };
    let g = preset.moments(j, (2 * n).max(1))?;
    let a = pade_denominator(&g, n)?;
    let ph = reduce_poly(&a, ctx, branch)?;
    if ph.degree() != Some(n) || !ph.is_monic() {
        return Err(Error::DegreeMismatch { expected: n, actual: ph.degree().unwrap_or(0) });
    }
    Ok(PartialHasse { j, n, a, ph })
}

/// Coefficientwise reduction; every coefficient must be `p`-integral.
pub fn reduce_poly(a: &Poly<QuadElem>, ctx: &PrimeContext, branch: usize) -> Result<Poly<FFElem>> {
    let field = ctx.residue_field();
    let coeffs = a.coeffs().iter().map(|c| ctx.reduce(c, branch)).collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Ok(Poly::new(vec![field.zero()]));
    }
    Ok(Poly::new(coeffs))
}

/// `(no, sp, ss)`: lcm and gcd of the partial Hasse polynomials, and for
/// two components the supersingular locus (`no` when `p` is inert, `sp`
/// when it splits).
pub fn assemble_loci(
    phs: &[Poly<FFElem>],
    splitting: Splitting,
) -> Result<(Poly<FFElem>, Poly<FFElem>, Option<Poly<FFElem>>)> {
    let no = crate::poly_series::poly_lcm(phs)?;
    let sp = crate::poly_series::poly_gcd_all(phs)?;
    let ss = match (phs.len(), splitting) {
        (2, Splitting::Inert) => Some(no.clone()),
        (2, _) => Some(sp.clone()),
        _ => None,
    };
    Ok((no, sp, ss))
}

/// Padé denominator of the Lyapunov-weighted combination of all `Phi_j`
/// at order `n`, reduced at `branch`.
pub fn combined_atkin(preset: &CurvePreset, ctx: &PrimeContext, branch: usize, n: usize) -> Result<Poly<FFElem>> {
    let streams = (1..=preset.genus()).map(|j| preset.moments(j, (2 * n).max(1))).collect::<Result<Vec<_>>>()?;
    let weights: Vec<QuadElem> = preset.lyap.iter().cloned().map(QuadElem::rational).collect();
    let g = combined_moments(&streams, &weights)?;
    let a = pade_denominator(&g, n)?;
    reduce_poly(&a, ctx, branch)
}

/// `ph(J) = J^n ph(1/J)`.
pub fn palindrome_check<F: crate::scalar::Field>(ph: &Poly<F>) -> bool {
    ph.is_palindrome()
}

fn truncation_agrees(preset: &CurvePreset, ctx: &PrimeContext, c: &PartialHasse, branch: usize) -> Result<Option<bool>> {
    let d = preset.truncation_degree(ctx.p(), c.j)?;
    if d < 0 || d as u64 >= ctx.p() {
        return Ok(None);
    }
    let y = match solution_series(preset, c.j, ctx.p() as usize) {
        Ok(y) => y,
        Err(Error::Precision { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let r = truncation_path(preset, ctx.p(), c.j, branch, &y)?;
    Ok(Some(r.ph == c.ph))
}

/// Partial Hasse polynomials and loci at `p`, over every prime above it.
/// `degrees` overrides `n_{p,j}` per component.
pub fn compute_locus(preset: &CurvePreset, p: u64, degrees: Option<&[usize]>) -> Result<Locus> {
    let ctx = preset.context(p)?;
    if let Some(ds) = degrees {
        if ds.len() != preset.genus() {
            return Err(Error::LengthMismatch(format!("{} degrees for {} components", ds.len(), preset.genus())));
        }
    }
    let branches = (0..ctx.branch_count())
        .map(|branch| {
            let components = (1..=preset.genus())
                .map(|j| partial_hasse(preset, &ctx, j, branch, degrees.map(|d| d[j - 1])))
                .collect::<Result<Vec<_>>>()?;
            let phs: Vec<_> = components.iter().map(|c| c.ph.clone()).collect();
            let (no, sp, ss) = assemble_loci(&phs, ctx.splitting())?;
            let truncation = components
                .iter()
                .map(|c| truncation_agrees(preset, &ctx, c, branch))
                .collect::<Result<Vec<_>>>()?;
            Ok(BranchLocus { branch, components, no, sp, ss, truncation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Locus { preset: preset.name.clone(), p, d: preset.d, splitting: ctx.splitting(), branches })
}

/// Loci for many primes at once; output order follows `primes`.
pub fn compute_loci(preset: &CurvePreset, primes: &[u64]) -> Vec<(u64, Result<Locus>)> {
    primes.par_iter().map(|&p| (p, compute_locus(preset, p, None))).collect()
}

/// Serializable view of a [`Locus`]. Polynomials are `{"coeffs","var"}`
/// objects; parsing and re-encoding a report reproduces it byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusReport {
    pub branches: Vec<BranchReport>,
    pub p: u64,
    pub preset: String,
    pub splitting: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    #[serde(rename = "A")]
    pub a: Vec<Value>,
    pub branch: usize,
    pub n: Vec<usize>,
    pub no: Value,
    pub p_integral: Vec<bool>,
    pub palindromes: Vec<bool>,
    pub ph: Vec<Value>,
    pub sp: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ss: Option<Value>,
    pub truncation: Vec<Option<bool>>,
}

impl Locus {
    pub fn report(&self) -> LocusReport {
        let ctx = PrimeContext::new(self.d, self.p).expect("context was valid when the locus was built");
        let branches = self
            .branches
            .iter()
            .map(|b| BranchReport {
                a: b.components.iter().map(|c| c.a.to_json("J")).collect(),
                branch: b.branch,
                n: b.components.iter().map(|c| c.n).collect(),
                no: b.no.to_json("J"),
                p_integral: vec![true; b.components.len()],
                palindromes: b.components.iter().map(|c| palindrome_check(&c.ph)).collect(),
                ph: b.components.iter().map(|c| c.ph.to_json("J")).collect(),
                sp: b.sp.to_json("J"),
                sqrt_d: (self.d != 0).then(|| ctx.sqrt_d_image(b.branch).to_string()),
                ss: b.ss.as_ref().map(|s| s.to_json("J")),
                truncation: b.truncation.clone(),
            })
            .collect();
        LocusReport { branches, p: self.p, preset: self.preset.clone(), splitting: self.splitting.label().into() }
    }

    /// Plain-text rendering; `alpha_basis` writes `K`-coefficients as `[a,b]`.
    pub fn render_text(&self, alpha_basis: bool) -> String {
        let ctx = PrimeContext::new(self.d, self.p).expect("valid context");
        let mut out = format!("preset {}  p = {}  ({})\n", self.preset, self.p, self.splitting.label());
        for b in &self.branches {
            if self.d != 0 {
                out.push_str(&format!("branch {}: sqrt({}) -> {}\n", b.branch, self.d, ctx.sqrt_d_image(b.branch)));
            }
            for (c, t) in b.components.iter().zip(&b.truncation) {
                let a = if alpha_basis { render_alpha(&c.a) } else { c.a.render("J") };
                out.push_str(&format!("  n_{{p,{}}} = {}\n", c.j, c.n));
                out.push_str(&format!("  A_{{{},{}}} = {}\n", c.j, c.n, a));
                let trunc = match t {
                    Some(true) => "truncation path agrees",
                    Some(false) => "truncation path DISAGREES",
                    None => "truncation path n/a",
                };
                let pal = if palindrome_check(&c.ph) { "palindromic" } else { "not palindromic" };
                out.push_str(&format!("  ph_{{p,{}}} = {}   [{pal}; {trunc}]\n", c.j, c.ph.render("J")));
            }
            out.push_str(&format!("  no = {}\n  sp = {}\n", b.no.render("J"), b.sp.render("J")));
            if let Some(ss) = &b.ss {
                out.push_str(&format!("  ss = {}\n", ss.render("J")));
            }
        }
        out
    }
}

impl LocusReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report encodes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Descending rendering with coefficients in the `[a,b] = a + b alpha` basis.
pub fn render_alpha(a: &Poly<QuadElem>) -> String {
    let mut terms = Vec::new();
    for (k, c) in a.coeffs().iter().enumerate().rev() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let coeff = if c.is_rational() { crate::exact_arith::format_rational(c.a()) } else { c.to_alpha_string() };
        terms.push(match k {
            0 => coeff,
            1 if coeff == "1" => "J".to_string(),
            1 => format!("{coeff}*J"),
            _ if coeff == "1" => format!("J^{k}"),
            _ => format!("{coeff}*J^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
