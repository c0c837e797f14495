use num_traits::Zero;

use super::finite::{FFElem, FiniteField};
use super::quad::QuadElem;
use super::rational::{is_prime, is_squarefree, pow_mod, rational_mod_p};
use crate::error::{Error, Result};

/// How an odd prime `p` decomposes in Q(√D).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    /// `p = 𝔭𝔭'`; carries the smaller root `r` of `r^2 = D` in `1..p`.
    Split(u64),
    Inert,
    Ramified,
    /// No quadratic field (`D = 0`): the single residue field is `F_p`.
    Rational,
}

impl Splitting {
    pub fn is_split(&self) -> bool {
        matches!(self, Splitting::Split(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Splitting::Split(_) => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
            Splitting::Rational => "rational",
        }
    }
}

pub fn splitting_type(d: u64, p: u64) -> Result<Splitting> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Ok(Splitting::Rational);
    }
    if d == 1 || !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let dm = d % p;
    if dm == 0 {
        return Ok(Splitting::Ramified);
    }
    if pow_mod(dm, (p - 1) / 2, p) != 1 {
        return Ok(Splitting::Inert);
    }
    let r = (1..p).find(|&r| r * r % p == dm).expect("a residue has a square root");
    Ok(Splitting::Split(r.min(p - r)))
}

/// A good odd prime together with its residue field(s) in Q(√D).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeContext {
    p: u64,
    d: u64,
    splitting: Splitting,
    residue: FiniteField,
}

impl PrimeContext {
    pub fn new(d: u64, p: u64) -> Result<Self> {
        let splitting = splitting_type(d, p)?;
        let residue = match splitting {
            Splitting::Ramified => return Err(Error::Ramified { p, d }),
            Splitting::Inert => FiniteField::quadratic(p, d)?,
            Splitting::Split(_) | Splitting::Rational => FiniteField::prime(p)?,
        };
        Ok(PrimeContext { p, d, splitting, residue })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }

    pub fn residue_field(&self) -> FiniteField {
        self.residue
    }

    /// Number of primes above `p`: two for split primes, otherwise one.
    pub fn branch_count(&self) -> usize {
        if self.splitting.is_split() {
            2
        } else {
            1
        }
    }

    /// Image of `√D` in the residue field of the given branch.
    pub fn sqrt_d_image(&self, branch: usize) -> FFElem {
        match self.splitting {
            Splitting::Split(r) if branch == 0 => self.residue.elem(r, 0),
            Splitting::Split(r) => self.residue.elem(self.p - r, 0),
            Splitting::Inert => self.residue.w(),
            Splitting::Rational | Splitting::Ramified => self.residue.zero(),
        }
    }

    /// Reduction modulo the prime above `p` selected by `branch`.
    pub fn reduce(&self, x: &QuadElem, branch: usize) -> Result<FFElem> {
        if x.d() != 0 && x.d() != self.d && !x.b().is_zero() {
            return Err(Error::Invalid(format!(
                "element of Q(sqrt {}) reduced in a Q(sqrt {}) context",
                x.d(),
                self.d
            )));
        }
        let not_integral = || Error::NotPIntegral { value: x.to_string(), p: self.p };
        let a = rational_mod_p(x.a(), self.p).map_err(|_| not_integral())?;
        let a = self.residue.elem(a, 0);
        if x.b().is_zero() {
            return Ok(a);
        }
        let b = rational_mod_p(x.b(), self.p).map_err(|_| not_integral())?;
        Ok(a + self.residue.elem(b, 0) * self.sqrt_d_image(branch))
    }
}

pub fn reduce(x: &QuadElem, ctx: &PrimeContext, branch: usize) -> Result<FFElem> {
    ctx.reduce(x, branch)
}
