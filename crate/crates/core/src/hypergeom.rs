//! Gauss hypergeometric moment providers for the cusped triangle groups
//! `Δ(n, m, ∞)` and closed forms for their orthogonal-polynomial recurrences.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{int, rat, Rational};
use crate::pade_ortho::{CFCoeffs, MomentStream, Provider, ThreeTerm};
use crate::poly_series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HGParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if c.is_integer() && !c.is_positive() {
            return Err(Error::HypergeometricPole { index: (-c.to_integer()).try_into().unwrap_or(0) });
        }
        Ok(HGParams { a, b, c })
    }
}

/// `2F1(a, b; c; t)` to the given order by the term-ratio recursion.
pub fn f21_series(p: &HGParams, order: usize) -> Result<Series<Rational>> {
    if order == 0 {
        return Err(Error::Precision { needed: 1, available: 0 });
    }
    let mut v = Vec::with_capacity(order);
    let mut c = int(1);
    v.push(c.clone());
    for i in 1..order {
        let k = int(i as i64 - 1);
        let den = (p.c.clone() + k.clone()) * (k.clone() + int(1));
        if den.is_zero() {
            return Err(Error::HypergeometricPole { index: i - 1 });
        }
        c = c * (p.a.clone() + k.clone()) * (p.b.clone() + k) / den;
        v.push(c.clone());
    }
    Ok(Series::new(v))
}

/// `lambda_1..lambda_count` of Gauss's continued fraction for
/// `2F1(a+1, b; c; z) / 2F1(a, b; c; z)`.
pub fn gauss_cf(p: &HGParams, count: usize) -> Result<CFCoeffs<Rational>> {
    let (a, b, c) = (&p.a, &p.b, &p.c);
    let mut lambda = Vec::with_capacity(count);
    for idx in 1..=count {
        let (num, den) = if idx == 1 {
            (b.clone(), c.clone())
        } else if idx % 2 == 0 {
            let k = int((idx / 2) as i64);
            (
                (a.clone() + k.clone()) * (c.clone() - b.clone() + k.clone() - int(1)),
                (c.clone() + int(2) * k.clone() - int(2)) * (c.clone() + int(2) * k - int(1)),
            )
        } else {
            let k = int((idx / 2) as i64);
            (
                (b.clone() + k.clone()) * (c.clone() - a.clone() - int(1) + k.clone()),
                (c.clone() + int(2) * k.clone() - int(1)) * (c.clone() + int(2) * k),
            )
        };
        if den.is_zero() {
            return Err(Error::HypergeometricPole { index: idx });
        }
        let l = num / den;
        if l.is_zero() {
            return Err(Error::ZeroLambda { index: idx });
        }
        lambda.push(l);
    }
    Ok(CFCoeffs { lambda })
}

/// Modular-embedding datum of one component `j` for `Δ(n, m, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDatum {
    pub n: u32,
    pub m: u32,
    pub j: u32,
    pub k: u32,
    pub r: u32,
}

impl TriangleDatum {
    pub fn new(n: u32, m: u32, j: u32, k: u32, r: u32) -> Result<Self> {
        if n < 2 || m < 2 || n * m <= n + m {
            return Err(Error::Invalid(format!("Δ({n},{m},∞) is not hyperbolic")));
        }
        if k == 0 || k > n || r == 0 || r > m {
            return Err(Error::Invalid(format!("need 1 <= k <= {n} and 1 <= r <= {m}, got k={k}, r={r}")));
        }
        let d = TriangleDatum { n, m, j, k, r };
        if d.big_n() <= 0 {
            return Err(Error::Invalid(format!("N_j = {} is not positive", d.big_n())));
        }
        let (a, b) = (d.a(), d.b());
        let unit = |x: &Rational| x.is_positive() && *x < int(1);
        if !unit(&a) || !unit(&b) {
            return Err(Error::Invalid(format!("parameters a = {a}, b = {b} leave (0, 1)")));
        }
        Ok(d)
    }

    /// Hecke group `Δ(2, m, ∞)` with `k_j = 1`, `r_j = j`.
    pub fn hecke(m: u32, j: u32) -> Result<Self> {
        Self::new(2, m, j, 1, j)
    }

    pub fn is_hecke(&self) -> bool {
        self.n == 2 && self.k == 1 && self.r == self.j
    }

    /// `N_j = mn - n r_j - m k_j`.
    pub fn big_n(&self) -> i64 {
        let (n, m, k, r) = (self.n as i64, self.m as i64, self.k as i64, self.r as i64);
        m * n - n * r - m * k
    }

    fn two_nm(&self) -> i64 {
        2 * self.n as i64 * self.m as i64
    }

    pub fn a(&self) -> Rational {
        rat(self.big_n(), self.two_nm())
    }

    pub fn b(&self) -> Rational {
        rat(self.big_n() + 2 * self.n as i64 * self.r as i64, self.two_nm())
    }

    pub fn params(&self) -> HGParams {
        HGParams { a: self.a(), b: self.b(), c: int(1) }
    }

    /// Orbifold Euler characteristic `-(1 - 1/n - 1/m)` of the cusped curve.
    pub fn euler_characteristic(&self) -> Rational {
        -(int(1) - rat(1, self.n as i64) - rat(1, self.m as i64))
    }

    /// Least common multiple of the elliptic orders.
    pub fn elliptic_lcm(&self) -> u64 {
        (self.n as u64).lcm(&(self.m as u64))
    }
}

/// `g_0..g_{count-1}` with `sum g_k t^k = 2F1(a+1, b; 1; t) / 2F1(a, b; 1; t)`.
pub fn triangle_moments(d: &TriangleDatum, count: usize) -> Result<MomentStream<Rational>> {
    let p = d.params();
    let shifted = HGParams { a: p.a.clone() + int(1), ..p.clone() };
    let q = f21_series(&shifted, count)?.div(&f21_series(&p, count)?)?;
    Ok(MomentStream::new(q.coeffs().to_vec(), Provider::Hypergeometric))
}

/// Lyapunov exponent `-2a / (χ N)` read off from matching the moment
/// generating function against `t - 2t^2 y'/(χ λ N y)`.
pub fn triangle_lyapunov(d: &TriangleDatum) -> Result<Rational> {
    let l = -(int(2) * d.a()) / (d.euler_characteristic() * int(d.elliptic_lcm() as i64));
    if !l.is_positive() || l > int(1) {
        return Err(Error::LyapunovRange(l.to_string()));
    }
    Ok(l)
}

/// Which closed-form recurrence to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// The Hecke specialization; agrees with Gauss's continued fraction.
    Hecke,
    /// The general-triangle display with its `(N_j + n r_j)/(2mn)` seed.
    /// Known to disagree with the continued fraction; kept for comparison.
    GeneralSuspect,
}

/// `a_k` for `Δ(2, m, ∞)`, component `j`, `k >= 1`.
pub fn hecke_a(m: i64, j: i64, k: i64) -> Rational {
    rat(4 * j * j - 8 * j * m + 16 * k * k * m * m - m * m, 8 * m * m * (4 * k * k - 1))
}

/// `b_k` for `Δ(2, m, ∞)`, component `j`, `k >= 2`. At `k = 1` the closed
/// form degenerates and `b_1 = lambda_1 lambda_2 = b (a+1)(1-b)/2` is used.
pub fn hecke_b(m: i64, j: i64, k: i64) -> Rational {
    if k == 1 {
        let a = rat(m - 2 * j, 4 * m);
        let b = rat(m + 2 * j, 4 * m);
        return b.clone() * (a + int(1)) * (int(1) - b) / int(2);
    }
    let num = (4 * k * m + m - 2 * j) * (4 * k * m - m - 2 * j) * (4 * k * m - 5 * m + 2 * j) * (4 * k * m - 3 * m + 2 * j);
    let den = 1024 * k * (k - 1) * (2 * k - 1) * (2 * k - 1) * m * m * m * m;
    rat(num, den)
}

fn general_a(d: &TriangleDatum, k: i64) -> Rational {
    let nj = int(d.big_n());
    let r = int(d.r as i64);
    let m = int(d.m as i64);
    let inner = int(2) * nj.clone() * nj.clone() - int(2) * nj * r.clone() / m.clone() - r / m;
    (int(2 * k * k) - inner) / int(4 * k * k - 1)
}

fn general_b(d: &TriangleDatum, k: i64) -> Option<Rational> {
    if k < 2 {
        return None;
    }
    let nj = int(d.big_n());
    let rm = rat(d.r as i64, d.m as i64);
    let kk = int(k);
    let num = (kk.clone() + nj.clone())
        * (kk.clone() - nj.clone() - int(1))
        * (kk.clone() - nj.clone() - rm.clone())
        * (kk + nj + rm - int(1));
    Some(num / int(k * (k - 1) * (2 * k - 1) * (2 * k - 1)))
}

/// The recurrence `a_0..a_{count-1}`, `b_1..b_{count-1}` from closed forms.
pub fn triangle_recurrence_closed_form(d: &TriangleDatum, count: usize, form: ClosedForm) -> Result<ThreeTerm<Rational>> {
    match form {
        ClosedForm::Hecke => {
            if !d.is_hecke() {
                return Err(Error::Invalid("the Hecke closed form needs n = 2, k_j = 1, r_j = j".into()));
            }
            let (m, j) = (d.m as i64, d.j as i64);
            Ok(ThreeTerm {
                a0: d.b(),
                a: (1..count as i64).map(|k| hecke_a(m, j, k)).collect(),
                b: (1..count as i64).map(|k| hecke_b(m, j, k)).collect(),
            })
        }
        ClosedForm::GeneralSuspect => {
            let seed = rat(d.big_n() + d.n as i64 * d.r as i64, d.two_nm());
            // b_1 is undefined in this display; the Hecke value stands in.
            let b1 = gauss_cf(&d.params(), 2)?.lambda.iter().fold(int(1), |acc, l| acc * l.clone());
            let b = (1..count as i64).map(|k| general_b(d, k).unwrap_or_else(|| b1.clone())).collect();
            Ok(ThreeTerm { a0: seed, a: (1..count as i64).map(|k| general_a(d, k)).collect(), b })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::pade_ortho::{cf_coefficients, recurrence_from_cf};

    #[test]
    fn f21_examples() {
        let p = HGParams::new(rat(1, 12), rat(5, 12), int(1)).unwrap();
        assert_eq!(f21_series(&p, 2).unwrap().coeffs(), &[int(1), rat(5, 144)]);
        let z = HGParams::new(int(0), rat(1, 3), int(1)).unwrap();
        assert!(f21_series(&z, 5).unwrap().coeffs()[1..].iter().all(Zero::is_zero));
        let q = HGParams::new(rat(3, 20), rat(7, 20), int(1)).unwrap();
        assert_eq!(f21_series(&q, 2).unwrap().coeffs()[1], rat(21, 400));
        assert!(HGParams::new(int(0), int(0), int(-2)).is_err());
    }

    #[test]
    fn gauss_cf_examples() {
        let p = TriangleDatum::hecke(5, 1).unwrap().params();
        let cf = gauss_cf(&p, 3).unwrap();
        assert_eq!(cf.lambda, vec![rat(7, 20), rat(299, 800), rat(459, 2400)]);
        let degenerate = HGParams::new(rat(1, 3), int(1), int(1)).unwrap();
        assert_eq!(gauss_cf(&degenerate, 2), Err(Error::ZeroLambda { index: 2 }));
    }

    #[test]
    fn triangle_first_moments() {
        let g1 = |d: TriangleDatum| triangle_moments(&d, 2).unwrap().as_slice()[1].clone();
        assert_eq!(g1(TriangleDatum::hecke(5, 1).unwrap()), rat(7, 20));
        assert_eq!(g1(TriangleDatum::hecke(5, 2).unwrap()), rat(9, 20));
        assert_eq!(g1(TriangleDatum::hecke(3, 1).unwrap()), rat(5, 12));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(hecke_a(5, 1, 1), rat(113, 200));
        assert_eq!(hecke_b(5, 1, 2), rat(651321, 11520000));
        let d = TriangleDatum::hecke(5, 1).unwrap();
        let suspect = triangle_recurrence_closed_form(&d, 2, ClosedForm::GeneralSuspect).unwrap();
        assert_eq!(suspect.a[0], rat(-73, 15));
        assert_ne!(suspect.a[0], rat(113, 200));
    }

    #[test]
    fn hecke_closed_form_matches_continued_fraction() {
        for m in [5u32, 7, 9] {
            for j in 1..=((m - 1) / 2) {
                let Ok(d) = TriangleDatum::hecke(m, j) else { continue };
                let cf = recurrence_from_cf(&gauss_cf(&d.params(), 17).unwrap()).unwrap();
                let closed = triangle_recurrence_closed_form(&d, 9, ClosedForm::Hecke).unwrap();
                assert_eq!(closed.a0, cf.a0);
                assert_eq!(closed.a[..8], cf.a[..8]);
                assert_eq!(closed.b[..8], cf.b[..8]);
            }
        }
    }

    #[test]
    fn series_quotient_matches_gauss_cf() {
        for d in [
            TriangleDatum::hecke(3, 1).unwrap(),
            TriangleDatum::hecke(5, 1).unwrap(),
            TriangleDatum::hecke(5, 2).unwrap(),
            TriangleDatum::hecke(7, 2).unwrap(),
        ] {
            let g = triangle_moments(&d, 13).unwrap();
            assert_eq!(cf_coefficients(&g, 12).unwrap(), gauss_cf(&d.params(), 12).unwrap());
        }
    }

    #[test]
    fn lyapunov_values() {
        assert_eq!(triangle_lyapunov(&TriangleDatum::hecke(3, 1).unwrap()).unwrap(), rat(1, 6));
        assert_eq!(triangle_lyapunov(&TriangleDatum::hecke(5, 1).unwrap()).unwrap(), rat(1, 10));
        assert_eq!(triangle_lyapunov(&TriangleDatum::hecke(5, 2).unwrap()).unwrap(), rat(1, 30));
    }

    #[test]
    fn datum_validation() {
        assert!(TriangleDatum::new(2, 2, 1, 1, 1).is_err());
        assert!(TriangleDatum::hecke(4, 2).is_err());
        let d = TriangleDatum::hecke(5, 2).unwrap();
        assert_eq!((d.big_n(), d.a(), d.b()), (1, rat(1, 20), rat(9, 20)));
        assert!(d.params().c.is_one());
    }
}
