use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{inv_mod, is_prime, mul_mod, pow_mod, rational_mod_p, Rational};
use crate::error::{Error, Result};
use crate::scalar::{Field, Notation};

/// Either `F_p` or `F_p[w]/(w^2 - d)` with `d` a non-residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    d: u64,
    quadratic: bool,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(FiniteField { p, d: 0, quadratic: false })
    }

    /// `F_{p^2} = F_p[w]/(w^2 - d)`; `d` must be a quadratic non-residue.
    pub fn quadratic(p: u64, d: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let d = d % p;
        if d == 0 || pow_mod(d, (p - 1) / 2, p) == 1 {
            return Err(Error::Invalid(format!("{d} is not a non-residue mod {p}")));
        }
        Ok(FiniteField { p, d, quadratic: true })
    }

    /// `F_{p^2}` built on the smallest non-residue.
    pub fn quadratic_default(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let d = (2..p).find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
        Self::quadratic(p, d)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Value of `w^2`; meaningless for prime fields.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic
    }

    pub fn size(&self) -> u64 {
        if self.quadratic {
            self.p * self.p
        } else {
            self.p
        }
    }

    pub fn elem(&self, c0: u64, c1: u64) -> FFElem {
        let c1 = if self.quadratic { c1 % self.p } else { 0 };
        FFElem(Repr::Res { field: *self, c0: c0 % self.p, c1 })
    }

    pub fn from_i64(&self, n: i64) -> FFElem {
        self.elem(n.rem_euclid(self.p as i64) as u64, 0)
    }

    pub fn from_rational(&self, x: &Rational) -> Result<FFElem> {
        Ok(self.elem(rational_mod_p(x, self.p)?, 0))
    }

    /// The generator `w` of a quadratic field.
    pub fn w(&self) -> FFElem {
        assert!(self.quadratic, "w only exists in F_p^2");
        self.elem(0, 1)
    }

    /// Every element, ordered by `(c1, c0)` so the prime subfield comes first.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        let hi = if self.quadratic { self.p } else { 1 };
        (0..hi).flat_map(move |c1| (0..self.p).map(move |c0| self.elem(c0, c1)))
    }

    pub fn zero(&self) -> FFElem {
        self.elem(0, 0)
    }

    pub fn one(&self) -> FFElem {
        self.elem(1, 0)
    }

    /// Parses `"c0"` or `"c0+c1*w"`.
    pub fn parse(&self, s: &str) -> Result<FFElem> {
        let bad = || Error::Parse(format!("not a finite-field element: {s:?}"));
        let s = s.trim();
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once('+') {
            Some((c0, rest)) => {
                let c1 = rest.trim().strip_suffix("*w").ok_or_else(bad)?;
                if !self.quadratic {
                    return Err(bad());
                }
                let x = self.from_i64(num(c0)?);
                let y = self.from_i64(num(c1)?);
                Ok(x + y * self.w())
            }
            None => Ok(self.from_i64(num(s)?)),
        }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Repr {
    /// Integer constant not yet attached to a field.
    Int(i64),
    Res { field: FiniteField, c0: u64, c1: u64 },
}

/// Element of `F_p` or `F_{p^2}`.
#[derive(Clone, Copy, Debug)]
pub struct FFElem(Repr);

impl FFElem {
    pub fn field(&self) -> Option<FiniteField> {
        match self.0 {
            Repr::Int(_) => None,
            Repr::Res { field, .. } => Some(field),
        }
    }

    fn parts_in(&self, f: FiniteField) -> (u64, u64) {
        match self.0 {
            Repr::Int(n) => (n.rem_euclid(f.p as i64) as u64, 0),
            Repr::Res { field, c0, c1 } => {
                assert_eq!(field, f, "mixing elements of different finite fields");
                (c0, c1)
            }
        }
    }

    /// Coordinates `(c0, c1)`; panics on an unbound constant.
    pub fn coords(&self) -> (u64, u64) {
        match self.0 {
            Repr::Res { c0, c1, .. } => (c0, c1),
            Repr::Int(_) => panic!("unbound finite-field constant has no coordinates"),
        }
    }

    /// Sort key for bound elements.
    pub fn key(&self) -> (u64, u64) {
        let (c0, c1) = self.coords();
        (c1, c0)
    }

    pub fn in_prime_field(&self) -> bool {
        match self.0 {
            Repr::Int(_) => true,
            Repr::Res { c1, .. } => c1 == 0,
        }
    }

    /// Image under `w -> -w`.
    pub fn conj(&self) -> Self {
        match self.0 {
            Repr::Int(_) => *self,
            Repr::Res { field, c0, c1 } => field.elem(c0, (field.p - c1) % field.p),
        }
    }

    fn binop(
        self,
        o: Self,
        int: impl Fn(i64, i64) -> Option<i64>,
        res: impl Fn(FiniteField, (u64, u64), (u64, u64)) -> (u64, u64),
    ) -> Self {
        let f = match (self.0, o.0) {
            (Repr::Int(x), Repr::Int(y)) => {
                return FFElem(Repr::Int(int(x, y).expect("integer constant overflow")))
            }
            (Repr::Res { field, .. }, _) | (_, Repr::Res { field, .. }) => field,
        };
        let (c0, c1) = res(f, self.parts_in(f), o.parts_in(f));
        f.elem(c0, c1)
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        match (self.0, other.0) {
            (Repr::Int(x), Repr::Int(y)) => x == y,
            (Repr::Res { field, .. }, _) | (_, Repr::Res { field, .. }) => {
                self.parts_in(field) == other.parts_in(field)
            }
        }
    }
}

impl Eq for FFElem {}

impl Notation for FFElem {
    fn signed_text(&self) -> (bool, String) {
        match self.0 {
            Repr::Int(n) => (n < 0, n.unsigned_abs().to_string()),
            Repr::Res { c1: 0, c0, .. } => (false, c0.to_string()),
            Repr::Res { c0: 0, c1, .. } => (false, format!("{c1}*w")),
            Repr::Res { .. } => (false, format!("({self})")),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Res { c0, c1: 0, .. } => write!(f, "{c0}"),
            Repr::Res { c0, c1, .. } => write!(f, "{c0}+{c1}*w"),
        }
    }
}

impl Add for FFElem {
    type Output = FFElem;
    fn add(self, o: FFElem) -> FFElem {
        self.binop(o, i64::checked_add, |f, (a0, a1), (b0, b1)| ((a0 + b0) % f.p, (a1 + b1) % f.p))
    }
}

impl Sub for FFElem {
    type Output = FFElem;
    fn sub(self, o: FFElem) -> FFElem {
        self.binop(o, i64::checked_sub, |f, (a0, a1), (b0, b1)| {
            ((a0 + f.p - b0) % f.p, (a1 + f.p - b1) % f.p)
        })
    }
}

impl Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        match self.0 {
            Repr::Int(n) => FFElem(Repr::Int(-n)),
            Repr::Res { field, c0, c1 } => field.elem(field.p - c0, field.p - c1),
        }
    }
}

impl Mul for FFElem {
    type Output = FFElem;
    fn mul(self, o: FFElem) -> FFElem {
        self.binop(o, i64::checked_mul, |f, (a0, a1), (b0, b1)| {
            let p = f.p;
            let c0 = (mul_mod(a0, b0, p) + mul_mod(f.d, mul_mod(a1, b1, p), p)) % p;
            let c1 = (mul_mod(a0, b1, p) + mul_mod(a1, b0, p)) % p;
            (c0, c1)
        })
    }
}

impl Div for FFElem {
    type Output = FFElem;
    fn div(self, o: FFElem) -> FFElem {
        self * o.inv().expect("division by zero in finite field")
    }
}

impl Zero for FFElem {
    fn zero() -> Self {
        FFElem(Repr::Int(0))
    }
    fn is_zero(&self) -> bool {
        match self.0 {
            Repr::Int(n) => n == 0,
            Repr::Res { c0, c1, .. } => c0 == 0 && c1 == 0,
        }
    }
}

impl One for FFElem {
    fn one() -> Self {
        FFElem(Repr::Int(1))
    }
}

impl Field for FFElem {
    fn inv(&self) -> Option<Self> {
        match self.0 {
            Repr::Int(n) if n == 1 || n == -1 => Some(*self),
            Repr::Int(_) => None,
            Repr::Res { field, c0, c1 } => {
                let p = field.p;
                // (c0 + c1 w)^-1 = (c0 - c1 w) / (c0^2 - d c1^2)
                let norm = (mul_mod(c0, c0, p) + p - mul_mod(field.d, mul_mod(c1, c1, p), p)) % p;
                let ninv = inv_mod(norm, p)?;
                Some(field.elem(mul_mod(c0, ninv, p), mul_mod(p - c1, ninv, p)))
            }
        }
    }

    fn int_like(&self, n: i64) -> Self {
        match self.0 {
            Repr::Int(_) => FFElem(Repr::Int(n)),
            Repr::Res { field, .. } => field.from_i64(n),
        }
    }

    fn characteristic(&self) -> u64 {
        self.field().map_or(0, |f| f.p)
    }

    fn unify(xs: &mut [Self]) {
        if let Some(f) = xs.iter().find_map(FFElem::field) {
            for x in xs.iter_mut() {
                if let Repr::Int(n) = x.0 {
                    *x = f.from_i64(n);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation() {
        let f = FiniteField::quadratic(3, 17).unwrap();
        let w = f.w();
        assert_eq!(w * w, f.from_i64(2));
        let x = f.one() + f.from_i64(2) * w;
        let y = f.one() - f.from_i64(2) * w;
        assert_eq!(x * y, f.from_i64(2));
        assert_eq!(x.to_string(), "1+2*w");
        assert_eq!(f.parse("1+2*w").unwrap(), x);
    }

    #[test]
    fn prime_field_inverse() {
        let f = FiniteField::prime(11).unwrap();
        assert_eq!(f.from_i64(6).inv().unwrap(), f.from_i64(2));
        assert!(f.zero().inv().is_none());
        assert_eq!(f.from_i64(7) / f.from_i64(6), f.from_i64(14));
    }

    #[test]
    fn unbound_constants_bind() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(FFElem::one() + f.from_i64(6), f.zero());
        assert_eq!(-FFElem::one(), f.from_i64(6));
        assert_eq!(FFElem::zero(), f.zero());
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        let f = FiniteField::quadratic_default(7).unwrap();
        for x in f.elements().filter(|x| !x.is_zero()) {
            assert_eq!(x * x.inv().unwrap(), f.one());
            assert_eq!(x.pow(f.size() - 1), f.one());
        }
        assert!(FiniteField::quadratic(7, 2).is_err());
    }
}
