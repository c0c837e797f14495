use std::path::{Path, PathBuf};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ode::{solve_series, ODESpec};
use crate::error::{Error, Result};
use crate::exact_arith::rational::{is_p_integral, rational_mod_p, serde_text};
use crate::exact_arith::{int, rat, PrimeContext, QuadElem, Rational, Splitting};
use crate::hypergeom::{triangle_moments, TriangleDatum};
use crate::pade_ortho::{MomentStream, Provider};
use crate::poly_series::Series;

const REGISTRY: &str = include_str!("../../data/presets.json");

/// Data files shipped inside the crate, addressable by file name.
pub fn embedded_file(name: &str) -> Option<&'static str> {
    match name {
        "presets.json" => Some(REGISTRY),
        "w17_phi1.json" => Some(include_str!("../../data/w17_phi1.json")),
        "w17_phi2.json" => Some(include_str!("../../data/w17_phi2.json")),
        "w17_ode_j1.json" => Some(include_str!("../../data/w17_ode_j1.json")),
        "w17_ode_j2.json" => Some(include_str!("../../data/w17_ode_j2.json")),
        _ => None,
    }
}

/// How `j'` depends on `j` and the splitting of `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JPrimeRule {
    Identity,
    /// `g = 2`: `j' = 3 - j` for inert primes, `j' = j` for split ones.
    SwapIfInert,
}

/// Closed form for `n_{p,j}`, the degree of the partial Hasse polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeRule {
    /// Number of supersingular j-invariants, `floor(p/12) + {0,1,1,2}`.
    ClassicalSl2,
    /// The `epsilon`/`delta` formulas for `Δ(2,5,∞)` in `Q(sqrt 5)`.
    #[serde(rename = "delta-2-5")]
    Delta25,
    /// `(χ/2) N (λ_j - p λ_{j'})`.
    Lyapunov,
    /// No closed form; callers must supply the degree.
    None,
}

/// Degree of the Dwork factor `alpha` used by the truncation path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TruncationRule {
    /// `(χ/2) N (λ_j - p λ_{j'})`.
    Lyapunov,
    /// Least non-negative residue of `-a_j` mod `p`, `a_j` the first
    /// hypergeometric parameter of a triangle component.
    ExponentResidue,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<TriangleDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ode: Option<String>,
}

/// Named bundle of invariants for a one-parameter family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePreset {
    pub name: String,
    /// Discriminant of the real-multiplication field; `0` for `Q`.
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "S")]
    pub bad: Vec<u64>,
    #[serde(with = "serde_text")]
    pub chi: Rational,
    #[serde(with = "serde_text::vec")]
    pub lyap: Vec<Rational>,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub jprime: JPrimeRule,
    pub degree: DegreeRule,
    pub truncation: TruncationRule,
    pub components: Vec<ComponentSource>,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl CurvePreset {
    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() || self.components.len() != self.lyap.len() {
            return Err(Error::Invalid(format!("preset {}: one Lyapunov exponent per component", self.name)));
        }
        if let Some(l) = self.lyap.iter().find(|l| l.is_zero() || **l < int(0) || **l > int(1)) {
            return Err(Error::LyapunovRange(l.to_string()));
        }
        for c in &self.components {
            if let Some(t) = &c.triangle {
                TriangleDatum::new(t.n, t.m, t.j, t.k, t.r)?;
            } else if c.moments.is_none() && c.ode.is_none() {
                return Err(Error::Invalid(format!("preset {}: component without a moment source", self.name)));
            }
        }
        if self.jprime == JPrimeRule::SwapIfInert && self.genus() != 2 {
            return Err(Error::Invalid("swap-if-inert needs exactly two components".into()));
        }
        Ok(())
    }

    /// Number of components `g`.
    pub fn genus(&self) -> usize {
        self.components.len()
    }

    /// Single-component triangle preset for user-supplied `(n, m, j, k, r)`.
    pub fn triangle_custom(d: TriangleDatum) -> Result<Self> {
        let lyap = crate::hypergeom::triangle_lyapunov(&d)?;
        let mut bad: Vec<u64> = vec![2];
        let mut q = 2 * d.n as u64 * d.m as u64;
        let mut f = 2;
        while q > 1 {
            if q % f == 0 {
                if !bad.contains(&f) {
                    bad.push(f);
                }
                q /= f;
            } else {
                f += 1;
            }
        }
        let preset = CurvePreset {
            name: format!("delta-{}-{}:{}", d.n, d.m, d.j),
            d: 0,
            bad,
            chi: d.euler_characteristic(),
            lyap: vec![lyap],
            big_n: d.elliptic_lcm(),
            jprime: JPrimeRule::Identity,
            degree: DegreeRule::None,
            truncation: TruncationRule::ExponentResidue,
            components: vec![ComponentSource { triangle: Some(d), ..Default::default() }],
            base_dir: None,
        };
        preset.validate()?;
        Ok(preset)
    }

    fn check_j(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.genus() {
            return Err(Error::ComponentIndex { j, g: self.genus() });
        }
        Ok(j - 1)
    }

    /// The prime context for `p`, refusing `p = 2`, primes in `S` and
    /// ramified primes.
    pub fn context(&self, p: u64) -> Result<PrimeContext> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if self.bad.contains(&p) {
            return Err(Error::BadPrime { p, preset: self.name.clone(), bad: self.bad.clone() });
        }
        PrimeContext::new(self.d, p)
    }

    pub fn jprime(&self, j: usize, splitting: Splitting) -> Result<usize> {
        self.check_j(j)?;
        Ok(match (self.jprime, splitting) {
            (JPrimeRule::SwapIfInert, Splitting::Inert) => 3 - j,
            _ => j,
        })
    }

    /// `(χ/2) N (λ_j - p λ_{j'})` as a rational.
    pub fn lyapunov_degree(&self, p: u64, j: usize) -> Result<Rational> {
        let ctx = self.context(p)?;
        let jp = self.jprime(j, ctx.splitting())?;
        let (lj, ljp) = (&self.lyap[j - 1], &self.lyap[jp - 1]);
        Ok(self.chi.clone() / int(2) * int(self.big_n as i64) * (lj.clone() - int(p as i64) * ljp.clone()))
    }

    /// `n_{p,j}` from the preset's closed form.
    pub fn degree_of_ph(&self, p: u64, j: usize) -> Result<usize> {
        let idx = self.check_j(j)?;
        let ctx = self.context(p)?;
        let value = match self.degree {
            DegreeRule::None => return Err(Error::MissingDegree(self.name.clone())),
            DegreeRule::ClassicalSl2 => {
                let extra = match p % 12 {
                    1 => 0,
                    5 | 7 => 1,
                    11 => 2,
                    _ => return Err(Error::Invalid(format!("classical degree needs p >= 5, got {p}"))),
                };
                int((p / 12 + extra) as i64)
            }
            DegreeRule::Delta25 => delta25_degree(p, idx + 1, ctx.splitting())?,
            DegreeRule::Lyapunov => self.lyapunov_degree(p, j)?,
        };
        if !value.is_integer() || value < int(0) {
            return Err(Error::Invalid(format!("degree formula gives {value} at p = {p}, j = {j}")));
        }
        Ok(value.to_integer().try_into().expect("small degree"))
    }

    /// `d_{p,j}`, the degree the normalized solution is truncated at.
    pub fn truncation_degree(&self, p: u64, j: usize) -> Result<i64> {
        let idx = self.check_j(j)?;
        let d = match self.truncation {
            TruncationRule::Lyapunov => {
                let v = self.lyapunov_degree(p, j)?;
                if !v.is_integer() {
                    return Err(Error::Invalid(format!("Dwork degree {v} is not an integer")));
                }
                i64::try_from(v.to_integer()).expect("small degree")
            }
            TruncationRule::ExponentResidue => {
                self.context(p)?;
                let t = self.components[idx].triangle.as_ref().ok_or_else(|| {
                    Error::Invalid("exponent-residue truncation needs a triangle component".into())
                })?;
                rational_mod_p(&(-t.a()), p)? as i64
            }
        };
        // Whatever the rule, d must agree with (χ/2) N λ_j modulo p.
        let base = self.chi.clone() / int(2) * int(self.big_n as i64) * self.lyap[idx].clone();
        if is_p_integral(&base, p) && rational_mod_p(&base, p)? != (d.rem_euclid(p as i64)) as u64 {
            return Err(Error::TruncationMismatch(format!(
                "degree {d} is not congruent to (χ/2)Nλ_{j} = {base} mod {p}"
            )));
        }
        Ok(d)
    }

    fn read_data(&self, name: &str) -> Result<String> {
        if let Some(dir) = &self.base_dir {
            let path = dir.join(name);
            if path.exists() {
                return std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
            }
        }
        if let Some(s) = embedded_file(name) {
            return Ok(s.to_string());
        }
        std::fs::read_to_string(name).map_err(|e| Error::Parse(format!("{name}: {e}")))
    }

    /// The Picard–Fuchs operator of component `j`, if one is available.
    pub fn ode(&self, j: usize) -> Result<Option<ODESpec>> {
        let c = &self.components[self.check_j(j)?];
        if let Some(t) = &c.triangle {
            let p = t.params();
            return ODESpec::hypergeometric(&p.a, &p.b, &p.c, self.bad.clone()).map(Some);
        }
        match &c.ode {
            Some(file) => ODESpec::from_json_str(&self.read_data(file)?),
            None => Ok(None),
        }
    }

    /// Moments listed in a data file for component `j`, if any.
    pub fn listed_moments(&self, j: usize) -> Result<Option<MomentStream<QuadElem>>> {
        let c = &self.components[self.check_j(j)?];
        match &c.moments {
            Some(file) => {
                let (d, g) = MomentStream::from_json_str(&self.read_data(file)?)?;
                if d != 0 && d != self.d {
                    return Err(Error::Parse(format!("moment file {file} is over Q(sqrt {d}), preset needs {}", self.d)));
                }
                Ok(Some(g))
            }
            None => Ok(None),
        }
    }

    /// `g_0..g_{count-1}` for component `j`: hypergeometric for triangle
    /// components, otherwise from the operator when transcribed, otherwise
    /// from the listed moments.
    pub fn moments(&self, j: usize, count: usize) -> Result<MomentStream<QuadElem>> {
        let c = &self.components[self.check_j(j)?];
        if let Some(t) = &c.triangle {
            return Ok(triangle_moments(t, count)?.map(|x| QuadElem::rational(x.clone())));
        }
        if let Some(ode) = self.ode(j)? {
            let y = solve_series(&ode, count.max(2))?;
            return phi_moments(&y, self, j)?.truncate(count);
        }
        match self.listed_moments(j)? {
            Some(g) => g.truncate(count),
            None => Err(Error::Precision { needed: count, available: 0 }),
        }
    }

    /// `kappa = 2 / (χ λ_j N)`.
    pub fn kappa(&self, j: usize) -> Result<Rational> {
        let idx = self.check_j(j)?;
        Ok(int(2) / (self.chi.clone() * self.lyap[idx].clone() * int(self.big_n as i64)))
    }
}

/// `n_{p,j}` for `Δ(2,5,∞)`; `p` must be unramified in `Q(sqrt 5)`.
pub fn delta25_degree(p: u64, j: usize, splitting: Splitting) -> Result<Rational> {
    let pr = int(p as i64);
    let (eps, d1, d2, split) = match splitting {
        Splitting::Inert => {
            let eps = if p % 4 == 1 { 1 } else { 0 };
            let (d1, d2) = if p % 5 == 2 { (1, 5) } else { (5, 2) };
            (eps, d1, d2, false)
        }
        Splitting::Split(_) => {
            let eps = if p % 4 == 1 { 0 } else { 1 };
            let (d1, d2) = if p % 5 == 1 { (5, 5) } else { (1, 2) };
            (eps, d1, d2, true)
        }
        _ => return Err(Error::Ramified { p, d: 5 }),
    };
    let e = rat(eps, 2);
    let v = match (split, j) {
        (false, 1) => (pr - int(3)) / int(20) + e + rat(5 - d1, 5),
        (false, _) => (int(3) * pr - int(1)) / int(20) + e + rat(5 - d2, 5),
        (true, 1) => int(3) * (pr - int(1)) / int(20) + e + rat(5 - d1, 5),
        (true, _) => (pr - int(1)) / int(20) + e + rat(5 - d2, 5),
    };
    Ok(v)
}

/// Moments of `Phi_j(t) = t - kappa t^2 y'/y`, `kappa = 2/(χ λ_j N)`:
/// `g_0 = 1`, `g_n = -kappa [y'/y]_{n-1}`. As many moments as `y` has terms.
pub fn phi_moments(y: &Series<QuadElem>, preset: &CurvePreset, j: usize) -> Result<MomentStream<QuadElem>> {
    let kappa = QuadElem::rational(preset.kappa(j)?);
    let l = y.logderiv_ratio()?;
    let mut g = vec![QuadElem::one()];
    g.extend(l.coeffs().iter().map(|c| -(kappa.clone() * c.clone())));
    Ok(MomentStream::new(g, Provider::Ode))
}

/// Inverse of [`phi_moments`]: the normalized series `y` whose moments are `g`.
pub fn series_from_moments(g: &MomentStream<QuadElem>, preset: &CurvePreset, j: usize) -> Result<Series<QuadElem>> {
    let kappa = QuadElem::rational(preset.kappa(j)?);
    let gs = g.as_slice();
    if gs.first().is_none_or(|g0| !g0.is_one()) {
        return Err(Error::Invalid("moments must start with g_0 = 1".into()));
    }
    let l: Vec<QuadElem> = gs[1..].iter().map(|x| -(x.clone() / kappa.clone())).collect();
    let mut y = vec![QuadElem::one()];
    for n in 1..gs.len() {
        let mut s = QuadElem::zero();
        for k in 0..n {
            s = s + l[k].clone() * y[n - 1 - k].clone();
        }
        y.push(s / QuadElem::rational(int(n as i64)));
    }
    Ok(Series::new(y))
}

/// Parses a registry (a JSON array of presets).
pub fn parse_registry(s: &str, base_dir: Option<&Path>) -> Result<Vec<CurvePreset>> {
    let mut v: Vec<CurvePreset> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    for p in &mut v {
        p.base_dir = base_dir.map(Path::to_path_buf);
        p.validate()?;
    }
    Ok(v)
}

pub fn builtin_presets() -> Vec<CurvePreset> {
    parse_registry(REGISTRY, None).expect("shipped registry is valid")
}

/// Looks up a shipped preset, or builds a Hecke triangle preset from
/// `delta-2-m:j`.
pub fn preset(name: &str) -> Result<CurvePreset> {
    if let Some(p) = builtin_presets().into_iter().find(|p| p.name == name) {
        return Ok(p);
    }
    let parsed = name.strip_prefix("delta-").and_then(|rest| {
        let (nm, j) = rest.split_once(':')?;
        let (n, m) = nm.split_once('-')?;
        Some((n.parse::<u32>().ok()?, m.parse::<u32>().ok()?, j.parse::<u32>().ok()?))
    });
    match parsed {
        Some((2, m, j)) => CurvePreset::triangle_custom(TriangleDatum::hecke(m, j)?),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}
