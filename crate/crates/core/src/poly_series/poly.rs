use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Notation};

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and [`Poly::degree`] returns `None` for it.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        F::unify(&mut coeffs);
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![c.int_like(0); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `x - c`.
    pub fn linear_root(c: F) -> Self {
        let one = c.int_like(1);
        Poly::new(vec![-c, one])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[F]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r.clone()))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero_like())
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(One::is_one)
    }

    fn zero_like(&self) -> F {
        self.coeffs.first().map_or_else(F::zero, |c| c.int_like(0))
    }

    pub fn characteristic(&self) -> u64 {
        self.coeffs.iter().map(Field::characteristic).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let li = l.inv().expect("nonzero leading coefficient is invertible");
                let mut p = self.scale(&li);
                let n = p.coeffs.len();
                p.coeffs[n - 1] = li.int_like(1);
                p
            }
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(x.int_like(0), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect())
    }

    /// Quotient and remainder; fails only for a zero divisor.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let li = g.lead().unwrap().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![self.zero_like(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = r[k + dg].clone() * li.clone();
            if !c.is_zero() {
                for (i, gi) in g.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * gi.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        Ok(self.div_rem(g)?.1)
    }

    /// Exact quotient, erroring when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(g)?;
        if !r.is_zero() {
            return Err(Error::Invalid("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, g: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), g.monic());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Monic least common multiple.
    pub fn lcm(&self, g: &Self) -> Self {
        if self.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let d = self.gcd(g);
        (&self.monic() * &g.monic()).div_exact(&d).expect("gcd divides the product")
    }

    /// `f / gcd(f, f')`, monic.
    ///
    /// In characteristic `p` this is only the radical when `deg f < p`; larger
    /// degrees are refused.
    pub fn squarefree_part(&self) -> Result<Self> {
        let Some(deg) = self.degree() else {
            return Ok(Poly::zero());
        };
        let p = self.characteristic();
        if p != 0 && deg as u64 >= p {
            return Err(Error::SquarefreeGuard { degree: deg, p });
        }
        let g = self.gcd(&self.derivative());
        Ok(self.monic().div_exact(&g).expect("gcd divides f").monic())
    }

    /// Raw coefficient reversal `x^deg f(1/x)`; the zero polynomial maps to
    /// itself. Leading zeros of the reversal are trimmed.
    pub fn reciprocal(&self) -> Self {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Whether the coefficient list reads the same in both directions.
    pub fn is_palindrome(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// `f(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * g) + &Poly::constant(c.clone()))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<Poly<G>, E> {
        Ok(Poly::new(self.coeffs.iter().map(f).collect::<std::result::Result<_, _>>()?))
    }
}

impl<F: Field + Notation> Poly<F> {
    /// Descending-degree rendering such as `J^2 - 9*J + 8`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.signed_text();
            let first = out.is_empty();
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let unit = mag == "1";
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag);
            } else if unit {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "var": var,
            "coeffs": self.coeffs.iter().map(Notation::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<T> {
    var: String,
    coeffs: Vec<T>,
}

impl<F: Field + DeserializeOwned> Poly<F> {
    /// Parses `{"var": ..., "coeffs": [...]}` for scalars with a serde
    /// encoding, returning the variable name alongside.
    pub fn from_json(v: &serde_json::Value) -> Result<(String, Self)> {
        let r: PolyRepr<F> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok((r.var, Poly::new(r.coeffs)))
    }
}

impl<F: Field + Notation> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("J"))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.zero_like(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Monic gcd of two polynomials over a field.
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    f.gcd(g)
}

/// Monic lcm of a nonempty list.
pub fn poly_lcm<F: Field>(fs: &[Poly<F>]) -> Result<Poly<F>> {
    let (first, rest) = fs.split_first().ok_or_else(|| Error::Invalid("lcm of an empty list".into()))?;
    Ok(rest.iter().fold(first.monic(), |acc, f| acc.lcm(f)))
}

/// Monic gcd of a nonempty list.
pub fn poly_gcd_all<F: Field>(fs: &[Poly<F>]) -> Result<Poly<F>> {
    let (first, rest) = fs.split_first().ok_or_else(|| Error::Invalid("gcd of an empty list".into()))?;
    Ok(rest.iter().fold(first.monic(), |acc, f| acc.gcd(f)))
}

pub fn squarefree_part<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    f.squarefree_part()
}

pub fn reciprocal_poly<F: Field>(f: &Poly<F>) -> Poly<F> {
    f.reciprocal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, FiniteField, QuadElem, Rational};

    fn qp(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    fn fp(f: FiniteField, c: &[i64]) -> Poly<crate::FFElem> {
        Poly::new(c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn gcd_examples() {
        let f11 = FiniteField::prime(11).unwrap();
        let g = fp(f11, &[8, -9, 1]).gcd(&fp(f11, &[-1, 1]));
        assert_eq!(g, fp(f11, &[-1, 1]));

        let f = qp(&[3, 1, 5]);
        assert_eq!(f.gcd(&Poly::zero()), f.monic());

        // (J-1)^2 (J-2) and (J-1)(J-3)
        let a = &(&qp(&[-1, 1]) * &qp(&[-1, 1])) * &qp(&[-2, 1]);
        let b = &qp(&[-1, 1]) * &qp(&[-3, 1]);
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let f = &(&qp(&[-1, 1]) * &qp(&[-1, 1])) * &qp(&[1, 1]);
        assert_eq!(f.squarefree_part().unwrap(), &qp(&[-1, 1]) * &qp(&[1, 1]));

        let f7 = FiniteField::prime(7).unwrap();
        let j4 = fp(f7, &[0, 0, 0, 0, 1]);
        assert_eq!(j4.squarefree_part().unwrap(), fp(f7, &[0, 1]));

        let j7 = fp(f7, &[0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(j7.squarefree_part(), Err(Error::SquarefreeGuard { degree: 7, p: 7 })));
    }

    #[test]
    fn lcm_examples() {
        let f7 = FiniteField::prime(7).unwrap();
        let l = poly_lcm(&[fp(f7, &[0, 1]), fp(f7, &[-5, 1])]).unwrap();
        assert_eq!(l, fp(f7, &[0, -5, 1]));

        let f13 = FiniteField::prime(13).unwrap();
        let big = Poly::from_roots(&[f13.from_i64(0), f13.from_i64(1), f13.from_i64(9)]);
        assert_eq!(poly_lcm(&[fp(f13, &[-1, 1]), big.clone()]).unwrap(), big);

        let f = qp(&[2, 4]);
        assert_eq!(poly_lcm(&[f.clone()]).unwrap(), f.monic());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(qp(&[1, 3, 1]).reciprocal(), qp(&[1, 3, 1]));
        assert_eq!(qp(&[0, 3, 1]).reciprocal(), qp(&[1, 3]));
        assert!(qp(&[1, 3, 1]).is_palindrome());
        assert!(!qp(&[8, -9, 1]).is_palindrome());
    }

    #[test]
    fn rendering() {
        assert_eq!(qp(&[8, -9, 1]).to_string(), "J^2 - 9*J + 8");
        let a = Poly::new(vec![rat(3213, 48000), rat(-549, 600), int(1)]);
        assert_eq!(a.to_string(), "J^2 - 183/200*J + 1071/16000");
        let x = QuadElem::new(rat(-27, 8), rat(5, 8), 17).unwrap();
        let p = Poly::new(vec![x, QuadElem::one()]);
        assert_eq!(p.render("J"), "J + (-27+5*sqrt(17))/8");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let a = Poly::new(vec![rat(-7, 20), int(1)]);
        let v = a.to_json("J");
        assert_eq!(v.to_string(), r#"{"coeffs":["-7/20","1"],"var":"J"}"#);
        let (var, b) = Poly::<QuadElem>::from_json(&v).unwrap();
        assert_eq!(var, "J");
        assert_eq!(b, a.map(|c| QuadElem::rational(c.clone())));
    }

    #[test]
    fn unbound_constants_bind_to_field() {
        let f5 = FiniteField::prime(5).unwrap();
        let p = Poly::new(vec![f5.from_i64(2), crate::FFElem::one()]);
        assert_eq!(p.coeffs()[1].field(), Some(f5));
    }
}
