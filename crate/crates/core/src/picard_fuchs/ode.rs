use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact_arith::{QuadElem, Rational};
use crate::poly_series::{Poly, Series};
use crate::scalar::Field;

/// Second-order operator `p2 d^2/dt^2 + p1 d/dt + p0` with a point of
/// maximal unipotent monodromy at `t = 0`.
///
/// The operator is stored alongside its `theta = t d/dt` form
/// `sum_k t^k R_k(theta)` with `R_k(x) = c2 x^2 + c1 x + c0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ODESpec {
    d: u64,
    bad: Vec<u64>,
    p: [Poly<QuadElem>; 3],
    theta: Vec<[QuadElem; 3]>,
}

fn t_order(f: &Poly<QuadElem>) -> Option<usize> {
    f.coeffs().iter().position(|c| !c.is_zero())
}

/// `f * t^shift`, where a negative shift must divide exactly.
fn shift(f: &Poly<QuadElem>, by: i64, what: &str) -> Result<Vec<QuadElem>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    if by >= 0 {
        let mut v = vec![QuadElem::zero(); by as usize];
        v.extend(f.coeffs().iter().cloned());
        return Ok(v);
    }
    let k = (-by) as usize;
    if t_order(f).unwrap() < k {
        return Err(Error::MalformedOperator(format!("t = 0 is an irregular singular point ({what} has too low an order)")));
    }
    Ok(f.coeffs()[k..].to_vec())
}

impl ODESpec {
    pub fn new(d: u64, bad: Vec<u64>, p2: Poly<QuadElem>, p1: Poly<QuadElem>, p0: Poly<QuadElem>) -> Result<Self> {
        let s = t_order(&p2).ok_or_else(|| Error::MalformedOperator("leading coefficient p2 is zero".into()))? as i64;
        let u2 = shift(&p2, -s, "p2")?;
        let u1 = shift(&p1, 1 - s, "p1")?;
        let u0 = shift(&p0, 2 - s, "p0")?;
        let len = u2.len().max(u1.len()).max(u0.len());
        let at = |v: &[QuadElem], k: usize| v.get(k).cloned().unwrap_or_else(QuadElem::zero);
        let theta: Vec<[QuadElem; 3]> = (0..len)
            .map(|k| {
                let (a2, a1, a0) = (at(&u2, k), at(&u1, k), at(&u0, k));
                [a2.clone(), a1 - a2, a0]
            })
            .collect();
        let [c2, c1, c0] = &theta[0];
        if !c0.is_zero() || !c1.is_zero() || c2.is_zero() {
            return Err(Error::MalformedOperator(
                "indicial polynomial at t = 0 is not a multiple of theta^2 (no maximal unipotent monodromy)".into(),
            ));
        }
        for f in [&p2, &p1, &p0] {
            if let Some(c) = f.coeffs().iter().find(|c| !c.is_rational() && c.d() != d) {
                return Err(Error::MalformedOperator(format!("coefficient {c} is not in Q(sqrt {d})")));
            }
        }
        Ok(ODESpec { d, bad, p: [p2, p1, p0], theta })
    }

    /// `t(1-t) y'' + (c - (a+b+1) t) y' - ab y`.
    pub fn hypergeometric(a: &Rational, b: &Rational, c: &Rational, bad: Vec<u64>) -> Result<Self> {
        let q = |x: Rational| QuadElem::rational(x);
        let one = Rational::one();
        let p2 = Poly::new(vec![q(Rational::zero()), q(one.clone()), q(-one.clone())]);
        let p1 = Poly::new(vec![q(c.clone()), q(-(a.clone() + b.clone() + one))]);
        let p0 = Poly::constant(q(-(a.clone() * b.clone())));
        Self::new(0, bad, p2, p1, p0)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn bad_primes(&self) -> &[u64] {
        &self.bad
    }

    pub fn coefficients(&self) -> &[Poly<QuadElem>; 3] {
        &self.p
    }

    fn r_at(&self, k: usize, x: i64) -> QuadElem {
        let [c2, c1, c0] = &self.theta[k];
        c2.mul_int(x * x) + c1.mul_int(x) + c0.clone()
    }

    /// Reads `{"D":17,"S":[2,17],"p2":{...},"p1":{...},"p0":{...}}`.
    /// Returns `Ok(None)` for an empty slot (operators set to `null`).
    pub fn from_json_str(s: &str) -> Result<Option<Self>> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(rename = "D", default)]
            d: u64,
            #[serde(rename = "S", default)]
            bad: Vec<u64>,
            p2: Option<serde_json::Value>,
            p1: Option<serde_json::Value>,
            p0: Option<serde_json::Value>,
        }
        let r: Repr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let (Some(p2), Some(p1), Some(p0)) = (r.p2, r.p1, r.p0) else {
            return Ok(None);
        };
        let poly = |v: &serde_json::Value| Poly::<QuadElem>::from_json(v).map(|(_, p)| p);
        Ok(Some(Self::new(r.d, r.bad, poly(&p2)?, poly(&p1)?, poly(&p0)?)?))
    }

    /// `L y` as a series, known to order `order(y) - 2`.
    pub fn apply(&self, y: &Series<QuadElem>) -> Series<QuadElem> {
        let d1 = y.derivative();
        let d2 = d1.derivative();
        let n = d2.order();
        let term = |p: &Poly<QuadElem>, s: &Series<QuadElem>| Series::from_poly(p, n).mul(&s.truncate(n).expect("long enough"));
        term(&self.p[0], &d2).add(&term(&self.p[1], &d1)).add(&term(&self.p[2], y))
    }
}

/// The solution `y = 1 + O(t)` to the given order.
pub fn solve_series(ode: &ODESpec, order: usize) -> Result<Series<QuadElem>> {
    if order == 0 {
        return Err(Error::Precision { needed: 1, available: 0 });
    }
    let mut y = vec![QuadElem::one()];
    for n in 1..order {
        let mut s = QuadElem::zero();
        for k in 1..ode.theta.len().min(n + 1) {
            s = s + ode.r_at(k, (n - k) as i64) * y[n - k].clone();
        }
        let r0 = ode.r_at(0, n as i64);
        let inv = r0.inv().ok_or_else(|| Error::MalformedOperator(format!("indicial obstruction at t^{n}")))?;
        y.push(-(s * inv));
    }
    Ok(Series::new(y))
}
