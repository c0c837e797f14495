use super::moments::MomentStream;
use crate::error::{Error, Result};
use crate::poly_series::Poly;
use crate::scalar::Field;

/// Solves the square system `a x = rhs` by fraction-free (Bareiss)
/// elimination with row pivoting. `None` when the matrix is singular.
pub fn bareiss_solve<F: Field>(a: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let mut prev = m[0][0].int_like(1);
    for k in 0..n {
        let piv = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
            m[i][k] = prev.int_like(0);
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![prev.int_like(0); n];
    for i in (0..n).rev() {
        let mut s = m[i][n].clone();
        for j in i + 1..n {
            s = s - m[i][j].clone() * x[j].clone();
        }
        x[i] = s / m[i][i].clone();
    }
    Some(x)
}

/// Monic denominator `T_m` of the `[m-1, m]` Padé approximant of
/// `Phi(x) = sum g_n x^(-n-1)`, from the Hankel system
/// `sum_{k<m} beta_k g_{n+k} = -g_{n+m}`, `n = 0..m-1`.
pub fn pade_denominator<F: Field>(g: &MomentStream<F>, m: usize) -> Result<Poly<F>> {
    let g = g.require(2 * m)?;
    if m == 0 {
        return Ok(Poly::one());
    }
    let h: Vec<Vec<F>> = (0..m).map(|i| g[i..i + m].to_vec()).collect();
    let rhs: Vec<F> = (0..m).map(|i| -g[i + m].clone()).collect();
    let beta = bareiss_solve(&h, &rhs).ok_or(Error::PadeNotExists { m })?;
    let mut c = beta;
    c.push(g[0].int_like(1));
    Ok(Poly::new(c))
}

/// Numerator `S_m` with `S_m / T_m - Phi = O(x^(-2m-1))`: the polynomial
/// part of `T_m * Phi`.
pub fn pade_numerator<F: Field>(g: &MomentStream<F>, t: &Poly<F>) -> Result<Poly<F>> {
    let Some(m) = t.degree() else {
        return Err(Error::DivisionByZero);
    };
    let g = g.require(m.max(1))?;
    let coeffs = (0..m)
        .map(|k| {
            (k + 1..=m)
                .map(|i| t.coeff(i) * g[i - k - 1].clone())
                .reduce(|a, b| a + b)
                .expect("nonempty range")
        })
        .collect();
    Ok(Poly::new(coeffs))
}

/// The same `(T_m, S_m)` pair by the extended Euclidean algorithm on
/// `x^(2m)` and `sum_{n<2m} g_n x^(2m-1-n)`, stopped at the first remainder
/// of degree below `m`. Independent of the Hankel path; used to cross-check.
pub fn pade_euclid<F: Field>(g: &MomentStream<F>, m: usize) -> Result<(Poly<F>, Poly<F>)> {
    let gs = g.require(2 * m)?;
    if m == 0 {
        return Ok((Poly::one(), Poly::zero()));
    }
    let one = gs[0].int_like(1);
    let mut r0 = Poly::monomial(one.clone(), 2 * m);
    let mut r1 = Poly::new((0..2 * m).map(|k| gs[2 * m - 1 - k].clone()).collect());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while r1.degree().is_some_and(|d| d >= m) {
        let (q, r) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    if t1.degree() != Some(m) {
        return Err(Error::PadeNotExists { m });
    }
    let lc = t1.lead().unwrap().inv().expect("nonzero leading coefficient");
    Ok((t1.scale(&lc), -s1.scale(&lc)))
}

/// Expands `S / T` in powers of `1/x`, returning the first `count`
/// coefficients `c_n` of `x^(-n-1)`. Requires `T` monic.
pub fn expand_ratio<F: Field>(s: &Poly<F>, t: &Poly<F>, count: usize) -> Vec<F> {
    let m = t.degree().expect("nonzero denominator");
    let zero = t.coeff(0).int_like(0);
    // S(x) x^(-m) / (T(x) x^(-m)) with u = 1/x: numerator sum s_k u^(m-k),
    // denominator sum t_k u^(m-k) (constant term 1). Result = sum c_n u^(n+1).
    let den: Vec<F> = (0..=m).map(|i| t.coeff(m - i)).collect();
    let num: Vec<F> = (0..=count).map(|i| if i <= m { s.coeff(m - i) } else { zero.clone() }).collect();
    let mut q: Vec<F> = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let mut v = num[k].clone();
        for i in 1..=k.min(m) {
            v = v - den[i].clone() * q[k - i].clone();
        }
        q.push(v);
    }
    q.into_iter().skip(1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, Rational};

    fn g25(j: usize) -> MomentStream<Rational> {
        let g = match j {
            1 => vec![int(1), rat(7, 20), rat(4053, 16000), rat(666729, 3200000)],
            _ => vec![int(1), rat(9, 20), rat(5319, 16000), rat(881343, 3200000)],
        };
        MomentStream::explicit(g)
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(pade_denominator(&g25(1), 1).unwrap(), Poly::new(vec![rat(-7, 20), int(1)]));
        let c = rat(3, 7);
        let g = MomentStream::explicit(vec![int(1), c.clone()]);
        assert_eq!(pade_denominator(&g, 1).unwrap(), Poly::linear_root(c));
        assert_eq!(
            pade_denominator(&g25(2), 2).unwrap(),
            Poly::new(vec![rat(1653, 16000), rat(-581, 600), int(1)])
        );
    }

    #[test]
    fn singular_hankel_is_reported() {
        let g = MomentStream::explicit(vec![int(1), int(2), int(4), int(8)]);
        assert_eq!(pade_denominator(&g, 2), Err(Error::PadeNotExists { m: 2 }));
        assert!(matches!(pade_denominator(&g, 3), Err(Error::Precision { .. })));
    }

    #[test]
    fn numerator_examples() {
        let c = rat(5, 3);
        let g = MomentStream::explicit(vec![int(1), c.clone()]);
        let t = pade_denominator(&g, 1).unwrap();
        assert_eq!(pade_numerator(&g, &t).unwrap(), Poly::one());
        let g2 = MomentStream::explicit(vec![int(2), c]);
        let t2 = pade_denominator(&g2, 1).unwrap();
        assert_eq!(pade_numerator(&g2, &t2).unwrap(), Poly::constant(int(2)));

        let g = g25(1);
        let t = pade_denominator(&g, 2).unwrap();
        let s = pade_numerator(&g, &t).unwrap();
        assert_eq!(s.degree(), Some(1));
        assert_eq!(expand_ratio(&s, &t, 4), g.as_slice());
    }

    #[test]
    fn euclid_agrees_with_hankel() {
        for j in [1, 2] {
            let g = g25(j);
            for m in 1..=2 {
                let t = pade_denominator(&g, m).unwrap();
                let (te, se) = pade_euclid(&g, m).unwrap();
                assert_eq!(te, t);
                assert_eq!(se, pade_numerator(&g, &t).unwrap());
            }
        }
    }
}
