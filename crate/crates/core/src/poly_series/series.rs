use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Truncated power series `c_0 + c_1 t + ... + c_{n-1} t^{n-1} + O(t^n)`.
///
/// The order `n` is the number of known coefficients. Arithmetic keeps the
/// smaller order of its operands and never pads unknown terms with zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Series<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        F::unify(&mut coeffs);
        Series { coeffs }
    }

    /// A polynomial read as a series known to the given order.
    pub fn from_poly(p: &Poly<F>, order: usize) -> Self {
        Series::new((0..order).map(|i| p.coeff(i)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<&F> {
        self.coeffs.get(i).ok_or(Error::Precision { needed: i + 1, available: self.order() })
    }

    /// Drop to a lower order; asking for more than is known is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Precision { needed: order, available: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[..order].to_vec() })
    }

    /// The known coefficients as a polynomial.
    pub fn to_poly(&self) -> Poly<F> {
        Poly::new(self.coeffs.clone())
    }

    fn zero_like(&self) -> F {
        self.coeffs.first().map_or_else(F::zero, |c| c.int_like(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series::new((0..n).map(|i| self.coeffs[i].clone() + o.coeffs[i].clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series::new((0..n).map(|i| self.coeffs[i].clone() - o.coeffs[i].clone()).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Series::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut v = vec![self.zero_like(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series::new(v)
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs.first().ok_or(Error::Precision { needed: 1, available: 0 })?;
        let c0i = c0.inv().ok_or(Error::NonUnitConstant)?;
        let n = self.order();
        let mut v: Vec<F> = Vec::with_capacity(n);
        v.push(c0i.clone());
        for k in 1..n {
            let mut s = self.zero_like();
            for i in 1..=k {
                s = s + self.coeffs[i].clone() * v[k - i].clone();
            }
            v.push(-(s * c0i.clone()));
        }
        Ok(Series::new(v))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Formal derivative; loses one order.
    pub fn derivative(&self) -> Self {
        Series::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect())
    }

    /// Multiply by `t^k`, gaining `k` orders of known zeros at the bottom.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![self.zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        Series::new(v)
    }

    /// `y'/y` to order `order(y) - 1`.
    pub fn logderiv_ratio(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(Error::Precision { needed: 2, available: self.order() });
        }
        let c0 = &self.coeffs[0];
        if c0.inv().is_none() {
            return Err(Error::NonUnitConstant);
        }
        let head = self.truncate(self.order() - 1)?;
        self.derivative().div(&head)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Series<G> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<Series<G>, E> {
        Ok(Series::new(self.coeffs.iter().map(f).collect::<std::result::Result<_, _>>()?))
    }
}

pub fn series_logderiv_ratio<F: Field>(y: &Series<F>) -> Result<Series<F>> {
    y.logderiv_ratio()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, Rational};

    fn s(c: &[Rational]) -> Series<Rational> {
        Series::new(c.to_vec())
    }

    #[test]
    fn logderiv_examples() {
        let y = s(&[int(1), int(1), int(0), int(0), int(0)]);
        assert_eq!(y.logderiv_ratio().unwrap(), s(&[int(1), int(-1), int(1), int(-1)]));
        let one = s(&[int(1), int(0), int(0)]);
        assert_eq!(one.logderiv_ratio().unwrap(), s(&[int(0), int(0)]));
        assert_eq!(s(&[int(0), int(1)]).logderiv_ratio(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn logderiv_of_hypergeometric_head() {
        // 2F1(1/12, 5/12; 1; t) = 1 + 5/144 t + 5*13*5*17/(144^2*4) t^2 + ...
        let c1 = rat(5, 144);
        let c2 = c1.clone() * rat(13 * 17, 12 * 12 * 4);
        let y = s(&[int(1), c1.clone(), c2.clone()]);
        let l = y.logderiv_ratio().unwrap();
        // (c1 + 2 c2 t) / (1 + c1 t) = c1 + (2 c2 - c1^2) t + ...
        assert_eq!(l.coeffs(), &[c1.clone(), int(2) * c2 - c1.clone() * c1]);
    }

    #[test]
    fn precision_is_never_fabricated() {
        let y = s(&[int(1), int(2)]);
        assert!(matches!(y.truncate(3), Err(Error::Precision { needed: 3, available: 2 })));
        assert!(y.coeff(2).is_err());
        let z = s(&[int(1), int(2), int(3)]);
        assert_eq!(y.mul(&z).order(), 2);
    }

    #[test]
    fn mul_then_div_is_identity() {
        let a = s(&[int(3), rat(1, 2), int(-4), int(7)]);
        let u = s(&[int(2), int(5), rat(-1, 3), int(1)]);
        assert_eq!(a.mul(&u).div(&u).unwrap(), a);
    }
}
