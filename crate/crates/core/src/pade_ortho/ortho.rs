use super::moments::MomentStream;
use crate::error::{Error, Result};
use crate::poly_series::{Poly, Series};
use crate::scalar::Field;

/// Coefficients of `P_{n+1} = (x - a_n) P_n - b_n P_{n-1}`.
///
/// `a[k]` holds `a_{k+1}` and `b[k]` holds `b_{k+1}`; `a0` is the seed
/// with `P_1 = x - a0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTerm<F> {
    pub a0: F,
    pub a: Vec<F>,
    pub b: Vec<F>,
}

impl<F: Field> ThreeTerm<F> {
    /// `a_n` for `n >= 0`.
    pub fn a_n(&self, n: usize) -> Option<&F> {
        if n == 0 {
            Some(&self.a0)
        } else {
            self.a.get(n - 1)
        }
    }

    /// `b_n` for `n >= 1`.
    pub fn b_n(&self, n: usize) -> Option<&F> {
        n.checked_sub(1).and_then(|i| self.b.get(i))
    }

    /// Number of polynomials `P_0..P_k` this recurrence can produce: `k + 1`.
    pub fn max_degree(&self) -> usize {
        1 + self.a.len().min(self.b.len())
    }
}

/// Continued-fraction coefficients `lambda_1, lambda_2, ...` of
/// `G(X) = g_0 / (1 - lambda_1 X / (1 - lambda_2 X / (1 - ...)))` where
/// `G(X) = sum g_n X^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CFCoeffs<F> {
    pub lambda: Vec<F>,
}

impl<F: Field> CFCoeffs<F> {
    /// `lambda_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> Option<&F> {
        k.checked_sub(1).and_then(|i| self.lambda.get(i))
    }
}

/// Monic orthogonal `P_0..P_n` for the moment functional, by Gram-Schmidt
/// on the monomials.
pub fn gram_schmidt<F: Field>(g: &MomentStream<F>, n: usize) -> Result<Vec<Poly<F>>> {
    if n > 0 {
        g.require(2 * n)?;
    }
    let one = g.get(0).map(|c| c.int_like(1)).unwrap_or_else(|_| F::one());
    let mut ps: Vec<Poly<F>> = vec![Poly::constant(one.clone())];
    let mut norms: Vec<F> = Vec::new();
    for k in 1..=n {
        let prev = &ps[k - 1];
        let nrm = g.inner(prev, prev)?;
        if nrm.is_zero() {
            return Err(Error::VanishingNorm { stage: k - 1 });
        }
        norms.push(nrm);
        let xk = Poly::monomial(one.clone(), k);
        let mut p = xk.clone();
        for (i, pi) in ps.iter().enumerate() {
            let c = g.inner(&xk, pi)? / norms[i].clone();
            p = &p - &pi.scale(&c);
        }
        ps.push(p);
    }
    Ok(ps)
}

/// `<P_k, P_k>` for `k = 0..polys.len()`.
pub fn norms<F: Field>(g: &MomentStream<F>, polys: &[Poly<F>]) -> Result<Vec<F>> {
    polys.iter().map(|p| g.inner(p, p)).collect()
}

/// `lambda_1..lambda_count` by repeated series reciprocals; needs
/// `count + 1` moments and a nonzero `g_0`.
pub fn cf_coefficients<F: Field>(g: &MomentStream<F>, count: usize) -> Result<CFCoeffs<F>> {
    let gs = g.require(count + 1)?;
    let g0 = gs[0].clone();
    let g0i = g0.inv().ok_or(Error::ZeroLambda { index: 0 })?;
    let mut f = Series::new(gs.iter().map(|x| x.clone() * g0i.clone()).collect());
    let one = g0.int_like(1);
    let mut lambda = Vec::with_capacity(count);
    for k in 1..=count {
        // u = 1 - 1/f has zero constant term; lambda_k is its linear term.
        let fi = f.inv()?;
        let u: Vec<F> = fi
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { one.clone() - c.clone() } else { -c.clone() })
            .collect();
        let lk = u[1].clone();
        let lki = lk.inv().ok_or(Error::ZeroLambda { index: k })?;
        lambda.push(lk);
        f = Series::new(u[1..].iter().map(|c| c.clone() * lki.clone()).collect());
    }
    Ok(CFCoeffs { lambda })
}

/// `a_0 = lambda_1`, `a_n = lambda_{2n} + lambda_{2n+1}`,
/// `b_n = lambda_{2n-1} lambda_{2n}`, as far as the lambdas reach.
pub fn recurrence_from_cf<F: Field>(cf: &CFCoeffs<F>) -> Result<ThreeTerm<F>> {
    let l = &cf.lambda;
    let a0 = l.first().cloned().ok_or(Error::Precision { needed: 1, available: 0 })?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut n = 1;
    while 2 * n <= l.len() {
        b.push(l[2 * n - 2].clone() * l[2 * n - 1].clone());
        if 2 * n < l.len() {
            a.push(l[2 * n - 1].clone() + l[2 * n].clone());
        }
        n += 1;
    }
    Ok(ThreeTerm { a0, a, b })
}

/// `P_0..P_n` from the three-term recurrence.
pub fn polys_from_recurrence<F: Field>(r: &ThreeTerm<F>, n: usize) -> Result<Vec<Poly<F>>> {
    let one = r.a0.int_like(1);
    let x = Poly::monomial(one.clone(), 1);
    let mut ps = vec![Poly::constant(one)];
    if n == 0 {
        return Ok(ps);
    }
    ps.push(&x - &Poly::constant(r.a0.clone()));
    for k in 1..n {
        let short = || Error::Precision { needed: k + 1, available: r.max_degree() };
        let ak = r.a_n(k).ok_or_else(short)?;
        let bk = r.b_n(k).ok_or_else(short)?;
        let next = &(&(&x - &Poly::constant(ak.clone())) * &ps[k]) - &ps[k - 1].scale(bk);
        ps.push(next);
    }
    Ok(ps)
}

/// `a_0..a_{n-1}` and `b_1..b_{n-1}` straight from the J-fraction
/// `G(X) = g_0 / (1 - a_0 X - b_1 X^2 / (1 - a_1 X - ...))`. Needs `2n`
/// moments. Unlike the `lambda` route this only requires the Hankel minors
/// themselves to be nonzero.
pub fn jfraction_recurrence<F: Field>(g: &MomentStream<F>, n: usize) -> Result<ThreeTerm<F>> {
    let gs = g.require((2 * n).max(1))?;
    let g0i = gs[0].inv().ok_or(Error::VanishingNorm { stage: 0 })?;
    let mut f = Series::new(gs.iter().map(|x| x.clone() * g0i.clone()).collect());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 0..n {
        let u = f.inv()?;
        a.push(-u.coeffs()[1].clone());
        if k + 1 == n {
            break;
        }
        let r: Vec<F> = u.coeffs()[2..].iter().map(|c| -c.clone()).collect();
        let bk = r[0].clone();
        let bki = bk.inv().ok_or(Error::VanishingNorm { stage: k + 1 })?;
        b.push(bk);
        f = Series::new(r.into_iter().map(|c| c * bki.clone()).collect());
    }
    let a0 = a.remove(0);
    Ok(ThreeTerm { a0, a, b })
}

/// The Atkin-type family `P_0..P_n` by the continued-fraction route. When
/// some `lambda_k` vanishes the recurrence is read off the J-fraction.
pub fn orthogonal_polys_cf<F: Field>(g: &MomentStream<F>, n: usize) -> Result<Vec<Poly<F>>> {
    if n == 0 {
        return Ok(vec![Poly::one()]);
    }
    let r = match cf_coefficients(g, 2 * n - 1) {
        Ok(cf) => recurrence_from_cf(&cf)?,
        Err(Error::ZeroLambda { .. }) => jfraction_recurrence(g, n)?,
        Err(e) => return Err(e),
    };
    polys_from_recurrence(&r, n)
}
