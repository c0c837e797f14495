use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Field;

/// `a + b*eta` with `eta^2 = s` over a base field `F`.
///
/// Used to adjoin a square root that is missing from the base field, e.g.
/// `F_{p^4}` over `F_{p^2}`. Constants (`b = 0`) may omit `s`; it is picked
/// up from the other operand.
#[derive(Clone, Debug)]
pub struct QuadExt<F> {
    a: F,
    b: F,
    s: Option<F>,
}

impl<F: Field> QuadExt<F> {
    pub fn new(a: F, b: F, s: F) -> Self {
        QuadExt { a, b, s: Some(s) }
    }

    pub fn constant(a: F) -> Self {
        QuadExt { a, b: F::zero(), s: None }
    }

    /// The adjoined root `eta` itself.
    pub fn eta(s: F) -> Self {
        let one = s.int_like(1);
        QuadExt { a: s.int_like(0), b: one, s: Some(s) }
    }

    pub fn parts(&self) -> (&F, &F) {
        (&self.a, &self.b)
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), s: self.s.clone() }
    }

    fn join(&self, o: &Self) -> Option<F> {
        match (&self.s, &o.s) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixing different quadratic extensions");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }
}

impl<F: Field> PartialEq for QuadExt<F> {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl<F: Field + fmt::Display> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({})+({})*eta", self.a, self.b)
        }
    }
}

impl<F: Field> Add for QuadExt<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.join(&o);
        QuadExt { a: self.a + o.a, b: self.b + o.b, s }
    }
}

impl<F: Field> Sub for QuadExt<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let s = self.join(&o);
        QuadExt { a: self.a - o.a, b: self.b - o.b, s }
    }
}

impl<F: Field> Neg for QuadExt<F> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b, s: self.s }
    }
}

impl<F: Field> Mul for QuadExt<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let s = self.join(&o);
        let bb = self.b.clone() * o.b.clone();
        let a = match &s {
            Some(s) => self.a.clone() * o.a.clone() + bb * s.clone(),
            None => self.a.clone() * o.a.clone(),
        };
        let b = self.a * o.b + self.b * o.a;
        QuadExt { a, b, s }
    }
}

impl<F: Field> Div for QuadExt<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in quadratic extension")
    }
}

impl<F: Field> Zero for QuadExt<F> {
    fn zero() -> Self {
        QuadExt::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<F: Field> One for QuadExt<F> {
    fn one() -> Self {
        QuadExt::constant(F::one())
    }
}

impl<F: Field> Field for QuadExt<F> {
    fn inv(&self) -> Option<Self> {
        if self.b.is_zero() {
            let a = self.a.inv()?;
            return Some(QuadExt { b: a.int_like(0), a, s: self.s.clone() });
        }
        let s = self.s.clone().expect("irrational element carries its extension");
        let norm = self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * s;
        let ni = norm.inv()?;
        Some(QuadExt { a: self.a.clone() * ni.clone(), b: -self.b.clone() * ni, s: self.s.clone() })
    }

    fn int_like(&self, n: i64) -> Self {
        QuadExt { a: self.a.int_like(n), b: self.a.int_like(0), s: self.s.clone() }
    }

    fn characteristic(&self) -> u64 {
        self.a.characteristic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::finite::FiniteField;

    #[test]
    fn quartic_field_inverses() {
        // 1 + w has norm -2, a non-residue mod 7, so it is not a square in F_49.
        let f = FiniteField::quadratic(7, 3).unwrap();
        let w = f.one() + f.w();
        assert_eq!(w.pow(24), f.from_i64(-1));
        let eta = QuadExt::eta(w);
        assert_eq!(eta.clone() * eta.clone(), QuadExt::constant(w));
        let x = QuadExt::new(f.elem(2, 5), f.elem(1, 3), w);
        let y = x.inv().unwrap();
        assert_eq!(x * y, QuadExt::one());
    }

    #[test]
    fn constants_join_extension() {
        let f = FiniteField::prime(5).unwrap();
        let eta = QuadExt::eta(f.from_i64(2));
        let two = QuadExt::constant(f.from_i64(2));
        let z = eta.clone() * eta - two;
        assert!(z.is_zero());
    }
}
