//! Brute-force checks that share no code path with the moment machinery:
//! Deuring's criterion for elliptic curves, the Legendre Hasse polynomial,
//! and Cartier–Manin matrices for the genus-2 fibers of `Δ(2,5,∞)`.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_arith::rational::{inv_mod, mul_mod};
use crate::exact_arith::{FFElem, FiniteField, QuadExt};
use crate::poly_series::Poly;
use crate::scalar::Field;

/// `f^e` keeping only exponents below `cap`.
fn pow_capped<F: Field>(f: &Poly<F>, mut e: u64, cap: usize) -> Poly<F> {
    let cut = |p: Poly<F>| {
        let c = p.into_coeffs();
        if c.len() > cap {
            Poly::new(c[..cap].to_vec())
        } else {
            Poly::new(c)
        }
    };
    let one = f.lead().map(|c| c.int_like(1)).unwrap_or_else(F::one);
    let mut acc = Poly::constant(one);
    let mut base = cut(f.clone());
    while e > 0 {
        if e & 1 == 1 {
            acc = cut(&acc * &base);
        }
        e >>= 1;
        if e > 0 {
            base = cut(&base * &base);
        }
    }
    acc
}

fn sorted(mut v: Vec<FFElem>) -> Vec<FFElem> {
    v.sort_by_key(FFElem::key);
    v
}

/// Whether `x^3 + a x + b` is supersingular: the coefficient of `x^(p-1)` in
/// `(x^3 + a x + b)^((p-1)/2)` vanishes.
fn deuring_supersingular(a: FFElem, b: FFElem, p: u64) -> bool {
    let f = Poly::new(vec![b, a, a.int_like(0), a.int_like(1)]);
    let h = pow_capped(&f, (p - 1) / 2, p as usize);
    h.coeff((p - 1) as usize).is_zero()
}

/// All supersingular j-invariants in `F_{p^2}`, sorted.
pub fn ss_elliptic_j(p: u64) -> Result<Vec<FFElem>> {
    if p < 3 {
        return Err(Error::EvenPrime);
    }
    let field = FiniteField::quadratic_default(p)?;
    Ok(ss_elliptic_j_in(field))
}

/// [`ss_elliptic_j`] inside a given model of `F_{p^2}`.
pub fn ss_elliptic_j_in(field: FiniteField) -> Vec<FFElem> {
    let p = field.p();
    if p == 3 {
        // No short Weierstrass form in characteristic 3; j = 0 is the only
        // supersingular invariant there.
        return vec![field.zero()];
    }
    let j1728 = field.from_i64(1728);
    let elems: Vec<FFElem> = field.elements().collect();
    let hits = elems
        .into_par_iter()
        .filter(|&j| {
            let (a, b) = if j.is_zero() {
                (field.zero(), field.one())
            } else if j == j1728 {
                (field.one(), field.zero())
            } else {
                let k = j / (j1728 - j);
                (k.mul_int(3), k.mul_int(2))
            };
            deuring_supersingular(a, b, p)
        })
        .collect();
    sorted(hits)
}

/// `H_p(λ) = sum_{i<=m} C(m,i)^2 λ^i`, `m = (p-1)/2`, over `F_p`.
pub fn legendre_hasse(p: u64) -> Result<Poly<FFElem>> {
    let field = FiniteField::prime(p)?;
    let m = (p - 1) / 2;
    let mut c = 1u64;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    for i in 0..=m {
        coeffs.push(field.elem(mul_mod(c, c, p), 0));
        // C(m, i+1) = C(m, i) (m - i) / (i + 1), with i + 1 < p.
        c = mul_mod(mul_mod(c, (m - i) % p, p), inv_mod(i + 1, p).expect("i + 1 < p"), p);
    }
    Ok(Poly::new(coeffs))
}

/// `j(λ) = 256 (λ^2 - λ + 1)^3 / (λ^2 (λ - 1)^2)`; `None` at `λ ∈ {0, 1}`.
pub fn legendre_j(lambda: FFElem) -> Option<FFElem> {
    let one = lambda.int_like(1);
    let den = lambda * lambda * (lambda - one) * (lambda - one);
    let num = (lambda * lambda - lambda + one).pow(3).mul_int(256);
    den.inv().map(|d| num * d)
}

/// Roots of `f` among the elements of `field`.
pub fn roots_in(f: &Poly<FFElem>, field: FiniteField) -> Vec<FFElem> {
    sorted(field.elements().filter(|x| f.eval(x).is_zero()).collect())
}

/// The Cartier–Manin matrix `(c_{ip-j})_{i,j=1,2}` of `y^2 = f(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMMatrix<F> {
    pub entries: [[F; 2]; 2],
}

impl<F: Field> CMMatrix<F> {
    pub fn det(&self) -> F {
        let [[a, b], [c, d]] = &self.entries;
        a.clone() * d.clone() - b.clone() * c.clone()
    }
}

/// Cartier–Manin matrix of the genus-2 curve `y^2 = f(x)`, `deg f ∈ {5, 6}`.
///
/// A fiber is ordinary iff the product `A A^(p) ... A^(p^(e-1))` over its
/// field of definition `F_{p^e}` is invertible. Frobenius twists have
/// determinant `det(A)^(p^i)`, so this is the same as `det A != 0`.
pub fn cartier_manin<F: Field>(f: &Poly<F>, p: u64) -> Result<CMMatrix<F>> {
    if p % 2 == 0 {
        return Err(Error::EvenPrime);
    }
    if !matches!(f.degree(), Some(5) | Some(6)) {
        return Err(Error::Invalid("Cartier–Manin matrices here need deg f in {5, 6}".into()));
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::SingularFiber);
    }
    let h = pow_capped(f, (p - 1) / 2, 2 * p as usize);
    let p = p as usize;
    let c = |i: usize, j: usize| h.coeff(i * p - j);
    Ok(CMMatrix { entries: [[c(1, 1), c(1, 2)], [c(2, 1), c(2, 2)]] })
}

/// How the fiber parameter `η` of `y^2 = x^5 - 5x^3 + 5x - 2η` relates to `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaRelation {
    /// `J = 1/(1 - η^2)`. This is the relation under which the fibers agree
    /// with the Atkin-polynomial loci.
    Standard,
    /// `J = 1/(η^2 - 1)`; yields exactly the negatives of the standard set.
    Negated,
}

/// Non-ordinary fibers of `y^2 = x^5 - 5x^3 + 5x - 2η` over `F_{p^2}`,
/// as values of `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberScan {
    pub nonordinary: Vec<FFElem>,
    /// Values of `J` whose fiber is singular; left out of both verdicts.
    pub singular: Vec<FFElem>,
}

fn delta25_fiber<F: Field>(eta: F, p: u64) -> Result<bool> {
    let k = |n: i64| eta.int_like(n);
    let f = Poly::new(vec![-(eta.clone() + eta.clone()), k(5), k(0), k(-5), k(0), k(1)]);
    Ok(cartier_manin(&f, p)?.det().is_zero())
}

pub fn nonordinary_fibers_delta25(p: u64) -> Result<FiberScan> {
    if p == 2 || p == 5 {
        return Err(Error::BadPrime { p, preset: "delta-2-5".into(), bad: vec![2, 5] });
    }
    nonordinary_fibers_delta25_in(FiniteField::quadratic_default(p)?, EtaRelation::Standard)
}

/// [`nonordinary_fibers_delta25`] inside a given model of `F_{p^2}`.
pub fn nonordinary_fibers_delta25_in(field: FiniteField, relation: EtaRelation) -> Result<FiberScan> {
    let p = field.p();
    if p == 2 || p == 5 || !field.is_quadratic() {
        return Err(Error::Invalid(format!("need F_(p^2) with p not in {{2, 5}}, got p = {p}")));
    }
    let mut roots: HashMap<(u64, u64), FFElem> = HashMap::new();
    for x in field.elements() {
        roots.entry((x * x).coords()).or_insert(x);
    }
    let elems: Vec<FFElem> = field.elements().collect();
    let verdicts: Vec<(FFElem, Result<bool>)> = elems
        .into_par_iter()
        .map(|j0| {
            if j0.is_zero() {
                // η = ∞: the fiber is y^2 = x^5 - 1 after rescaling.
                let f = Poly::new(vec![field.from_i64(-1), field.zero(), field.zero(), field.zero(), field.zero(), field.one()]);
                return (j0, cartier_manin(&f, p).map(|a| a.det().is_zero()));
            }
            let c = match relation {
                EtaRelation::Standard => field.one() - field.one() / j0,
                EtaRelation::Negated => field.one() + field.one() / j0,
            };
            // Either square root of c will do: η and -η give quadratic twists,
            // which share their p-rank.
            let v = match roots.get(&c.coords()) {
                Some(&eta) => delta25_fiber(eta, p),
                None => delta25_fiber(QuadExt::eta(c), p),
            };
            (j0, v)
        })
        .collect();
    let mut nonordinary = Vec::new();
    let mut singular = Vec::new();
    for (j0, v) in verdicts {
        match v {
            Ok(true) => nonordinary.push(j0),
            Ok(false) => {}
            Err(Error::SingularFiber) => singular.push(j0),
            Err(e) => return Err(e),
        }
    }
    Ok(FiberScan { nonordinary: sorted(nonordinary), singular: sorted(singular) })
}

/// Lifts a polynomial over `F_p` (or over `field` itself) into `field`.
pub fn lift_poly(f: &Poly<FFElem>, field: FiniteField) -> Poly<FFElem> {
    f.map(|c| match c.field() {
        Some(src) if src == field => *c,
        Some(_) if c.in_prime_field() => field.elem(c.coords().0, 0),
        Some(_) => panic!("cannot lift {c} into a different quadratic model"),
        None => field.zero() + *c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::odd_primes;

    fn set(field: FiniteField, xs: &[i64]) -> Vec<FFElem> {
        sorted(xs.iter().map(|&x| field.from_i64(x)).collect())
    }

    #[test]
    fn supersingular_j_examples() {
        for (p, js) in [(3, vec![0]), (5, vec![0]), (11, vec![0, 1]), (13, vec![5])] {
            let f = FiniteField::quadratic_default(p).unwrap();
            assert_eq!(ss_elliptic_j_in(f), set(f, &js));
        }
    }

    #[test]
    fn supersingular_count() {
        for p in odd_primes(5, 60) {
            let extra = [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2][(p % 12) as usize];
            let js = ss_elliptic_j(p).unwrap();
            assert_eq!(js.len() as u64, p / 12 + extra, "p = {p}");
            let f = Poly::from_roots(&js);
            assert!(f.coeffs().iter().all(FFElem::in_prime_field));
        }
    }

    #[test]
    fn legendre_examples() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(legendre_hasse(3).unwrap(), Poly::new(vec![f3.one(), f3.one()]));
        let f7 = FiniteField::prime(7).unwrap();
        let want: Vec<_> = [1, 2, 2, 1].iter().map(|&c| f7.from_i64(c)).collect();
        assert_eq!(legendre_hasse(7).unwrap(), Poly::new(want));
        for p in odd_primes(3, 200) {
            assert!(legendre_hasse(p).unwrap().is_palindrome());
        }
    }

    #[test]
    fn legendre_roots_are_supersingular() {
        for p in odd_primes(3, 32) {
            let f = FiniteField::quadratic_default(p).unwrap();
            let ss = ss_elliptic_j_in(f);
            let h = lift_poly(&legendre_hasse(p).unwrap(), f);
            let mut image: Vec<FFElem> = roots_in(&h, f).into_iter().filter_map(legendre_j).collect();
            image.sort_by_key(FFElem::key);
            image.dedup();
            assert_eq!(image, ss, "p = {p}");
        }
    }

    #[test]
    fn cartier_manin_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        let k = |n: i64| f7.from_i64(n);
        let f = Poly::new(vec![k(-1), k(0), k(0), k(0), k(0), k(1)]);
        // (x^5 - 1)^3 = x^15 - 3x^10 + 3x^5 - 1: only c_5 = 3 survives.
        let a = cartier_manin(&f, 7).unwrap();
        assert_eq!(a.entries, [[k(0), k(3)], [k(0), k(0)]]);
        assert!(a.det().is_zero());

        let f3 = FiniteField::prime(3).unwrap();
        let g = Poly::new((1..=6).map(|c| f3.from_i64(c)).collect());
        let g = &g + &Poly::constant(f3.one());
        if let Ok(m) = cartier_manin(&g, 3) {
            assert_eq!(m.entries, [[g.coeff(2), g.coeff(1)], [g.coeff(5), g.coeff(4)]]);
        }
        let sq = Poly::new(vec![k(0), k(0), k(1), k(0), k(0), k(1)]);
        assert_eq!(cartier_manin(&sq, 7), Err(Error::SingularFiber));
    }

    #[test]
    fn delta25_fiber_examples() {
        for (p, js) in [(7, vec![0, 5]), (11, vec![1, 8]), (13, vec![0, 1, 9])] {
            let f = FiniteField::quadratic_default(p).unwrap();
            let scan = nonordinary_fibers_delta25_in(f, EtaRelation::Standard).unwrap();
            assert_eq!(scan.nonordinary, set(f, &js));
            let neg: Vec<i64> = js.iter().map(|j| -j).collect();
            let scan = nonordinary_fibers_delta25_in(f, EtaRelation::Negated).unwrap();
            assert_eq!(scan.nonordinary, set(f, &neg));
        }
    }
}
