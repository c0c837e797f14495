use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, is_squarefree, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::scalar::{Field, Notation};

/// `a + b·√D` in the real quadratic field Q(√D).
///
/// `d == 0` is plain Q (then `b == 0`). Elements with `d == 0` combine
/// freely with elements of any Q(√D); mixing two different nonzero
/// discriminants is a logic error and panics.
#[derive(Clone, Debug)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    d: u64,
}

fn join(d1: u64, d2: u64) -> u64 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixing elements of Q(sqrt {x}) and Q(sqrt {y})"),
    }
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d == 0 {
            if !b.is_zero() {
                return Err(Error::Invalid("b must vanish when D = 0".into()));
            }
        } else if d == 1 || !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(QuadElem { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        QuadElem { a, b: Rational::zero(), d: 0 }
    }

    /// `√D` itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// `[u, v] = u + v·(1 + √D)/2`.
    pub fn from_alpha(u: Rational, v: Rational, d: u64) -> Result<Self> {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let b = v * half;
        Self::new(u + b.clone(), b, d)
    }

    /// Coordinates `(u, v)` in the basis `[1, (1 + √D)/2]`.
    pub fn to_alpha(&self) -> (Rational, Rational) {
        (self.a.clone() - self.b.clone(), self.b.clone() * Rational::from_integer(2.into()))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Discriminant tag; `0` for plain rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn norm(&self) -> Rational {
        self.a.clone() * self.a.clone()
            - Rational::from_integer(self.d.into()) * self.b.clone() * self.b.clone()
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// `(27-5*sqrt(17))/8`-style rendering with a common denominator.
    pub fn to_sqrt_string(&self) -> String {
        if self.b.is_zero() {
            return format_rational(&self.a);
        }
        let den = self.denominator();
        let na = (self.a.clone() * Rational::from_integer(den.clone())).to_integer();
        let nb = (self.b.clone() * Rational::from_integer(den.clone())).to_integer();
        let root = if nb.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", nb.abs(), self.d)
        };
        let body = match (na.is_zero(), nb.is_negative()) {
            (true, false) => root,
            (true, true) => format!("-{root}"),
            (false, false) => format!("{na}+{root}"),
            (false, true) => format!("{na}-{root}"),
        };
        if den.is_one() {
            if na.is_zero() {
                body
            } else {
                format!("({body})")
            }
        } else {
            format!("({body})/{den}")
        }
    }

    /// `[u,v]` rendering in the integral basis.
    pub fn to_alpha_string(&self) -> String {
        let (u, v) = self.to_alpha();
        format!("[{},{}]", format_rational(&u), format_rational(&v))
    }
}

impl Notation for QuadElem {
    fn signed_text(&self) -> (bool, String) {
        if self.b.is_zero() {
            return self.a.signed_text();
        }
        let text = self.to_sqrt_string();
        if text.starts_with('(') {
            (false, text)
        } else {
            (false, format!("({text})"))
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("quadratic element encodes")
    }
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadElem {}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sqrt_string())
    }
}

impl From<Rational> for QuadElem {
    fn from(a: Rational) -> Self {
        QuadElem::rational(a)
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        QuadElem { d: join(self.d, o.d), a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        QuadElem { d: join(self.d, o.d), a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: QuadElem) -> QuadElem {
        let d = join(self.d, o.d);
        if self.b.is_zero() && o.b.is_zero() {
            return QuadElem { a: self.a * o.a, b: Rational::zero(), d };
        }
        let dd = Rational::from_integer(d.into());
        QuadElem {
            a: self.a.clone() * o.a.clone() + dd * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
            d,
        }
    }
}

impl Div for QuadElem {
    type Output = QuadElem;
    fn div(self, o: QuadElem) -> QuadElem {
        self * o.inv().expect("division by zero in Q(sqrt D)")
    }
}

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem::rational(Rational::one())
    }
}

impl Field for QuadElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(QuadElem { a: self.a.recip(), b: Rational::zero(), d: self.d });
        }
        let n = self.norm();
        let c = self.conj();
        Some(QuadElem { a: c.a / n.clone(), b: c.b / n, d: self.d })
    }

    fn int_like(&self, n: i64) -> Self {
        QuadElem { a: Rational::from_integer(n.into()), b: Rational::zero(), d: self.d }
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum QuadRepr {
    Plain(String),
    Coords {
        a: String,
        b: String,
        #[serde(rename = "D")]
        d: u64,
    },
    Alpha {
        alpha: [String; 2],
        #[serde(rename = "D")]
        d: u64,
    },
}

impl Serialize for QuadElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.b.is_zero() {
            QuadRepr::Plain(format_rational(&self.a)).serialize(s)
        } else {
            QuadRepr::Coords {
                a: format_rational(&self.a),
                b: format_rational(&self.b),
                d: self.d,
            }
            .serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for QuadElem {
    fn deserialize<De: Deserializer<'de>>(de: De) -> std::result::Result<Self, De::Error> {
        use serde::de::Error as _;
        let repr = QuadRepr::deserialize(de)?;
        let r = |s: &str| parse_rational(s).map_err(De::Error::custom);
        match repr {
            QuadRepr::Plain(s) => Ok(QuadElem::rational(r(&s)?)),
            QuadRepr::Coords { a, b, d } => {
                QuadElem::new(r(&a)?, r(&b)?, d).map_err(De::Error::custom)
            }
            QuadRepr::Alpha { alpha, d } => {
                QuadElem::from_alpha(r(&alpha[0])?, r(&alpha[1])?, d).map_err(De::Error::custom)
            }
        }
    }
}
