//! The scalar abstraction every polynomial, series and approximation
//! routine in this crate is generic over.
//!
//! Exact fields only: [`Rational`](crate::Rational), [`QuadElem`](crate::QuadElem),
//! [`FFElem`](crate::FFElem) and the generic [`QuadExt`](crate::QuadExt).
//! Fields whose parameters are only known at runtime (the prime `p`, the
//! discriminant `D`) encode `0` and `1` as context-free constants that bind
//! to a concrete field on first contact with a bound element.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// The integer `n` as an element of the same field as `self`.
    fn int_like(&self, n: i64) -> Self;

    /// Characteristic of the field `self` belongs to; `0` for Q and Q(√D).
    fn characteristic(&self) -> u64;

    fn mul_int(&self, n: i64) -> Self {
        self.clone() * self.int_like(n)
    }

    /// Attach context-free constants in `xs` to the concrete field of any
    /// bound element among them. A no-op for fields without runtime
    /// parameters.
    fn unify(_xs: &mut [Self]) {}

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.int_like(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// How a scalar prints as a polynomial coefficient and encodes in JSON.
pub trait Notation {
    /// `(negative, magnitude)`; the magnitude is wrapped in parentheses
    /// when it is a compound expression.
    fn signed_text(&self) -> (bool, String);

    fn to_json(&self) -> serde_json::Value;
}
