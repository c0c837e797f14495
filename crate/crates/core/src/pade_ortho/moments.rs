use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::QuadElem;
use crate::poly_series::Poly;
use crate::scalar::Field;

/// Where a moment sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provider {
    Explicit,
    Hypergeometric,
    Ode,
    Combined,
}

impl fmt::Display for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provider::Explicit => "explicit",
            Provider::Hypergeometric => "hypergeometric",
            Provider::Ode => "ode",
            Provider::Combined => "combined",
        };
        f.write_str(s)
    }
}

/// Moments `g_0, g_1, ...` of a linear functional, with generating function
/// `Phi(x) = sum g_n x^(-n-1)`.
///
/// Streams are finite: providers compute as many terms as requested up
/// front and asking past the end is a precision error.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentStream<F> {
    g: Vec<F>,
    provider: Provider,
}

impl<F: Field> MomentStream<F> {
    pub fn new(mut g: Vec<F>, provider: Provider) -> Self {
        F::unify(&mut g);
        MomentStream { g, provider }
    }

    pub fn explicit(g: Vec<F>) -> Self {
        Self::new(g, Provider::Explicit)
    }

    pub fn provider(&self) -> Provider {
        self.provider
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.g
    }

    pub fn get(&self, n: usize) -> Result<&F> {
        self.g.get(n).ok_or(Error::Precision { needed: n + 1, available: self.g.len() })
    }

    /// Fails unless `g_0 .. g_{count-1}` are available.
    pub fn require(&self, count: usize) -> Result<&[F]> {
        if count > self.g.len() {
            return Err(Error::Precision { needed: count, available: self.g.len() });
        }
        Ok(&self.g[..count])
    }

    pub fn truncate(&self, count: usize) -> Result<Self> {
        Ok(MomentStream { g: self.require(count)?.to_vec(), provider: self.provider })
    }

    pub fn scale(&self, c: &F) -> Self {
        MomentStream::new(self.g.iter().map(|x| x.clone() * c.clone()).collect(), self.provider)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MomentStream<G> {
        MomentStream::new(self.g.iter().map(f).collect(), self.provider)
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> std::result::Result<G, E>) -> std::result::Result<MomentStream<G>, E> {
        Ok(MomentStream::new(self.g.iter().map(f).collect::<std::result::Result<_, _>>()?, self.provider))
    }

    /// The moment functional `<f, h> = sum f_i h_j g_{i+j}`.
    pub fn inner(&self, f: &Poly<F>, h: &Poly<F>) -> Result<F> {
        let (Some(df), Some(dh)) = (f.degree(), h.degree()) else {
            return Ok(F::zero());
        };
        self.require(df + dh + 1)?;
        let mut acc = self.g[0].int_like(0);
        for (i, a) in f.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in h.coeffs().iter().enumerate() {
                acc = acc + a.clone() * b.clone() * self.g[i + j].clone();
            }
        }
        Ok(acc)
    }
}

/// Pointwise `sum_j w_j g^(j)`.
pub fn combined_moments<F: Field>(streams: &[MomentStream<F>], weights: &[F]) -> Result<MomentStream<F>> {
    if streams.is_empty() || streams.len() != weights.len() {
        return Err(Error::LengthMismatch(format!(
            "{} streams against {} weights",
            streams.len(),
            weights.len()
        )));
    }
    let n = streams[0].len();
    if let Some(s) = streams.iter().find(|s| s.len() != n) {
        return Err(Error::LengthMismatch(format!("streams of length {n} and {}", s.len())));
    }
    let g = (0..n)
        .map(|i| {
            streams
                .iter()
                .zip(weights)
                .map(|(s, w)| s.g[i].clone() * w.clone())
                .reduce(|a, b| a + b)
                .expect("nonempty")
        })
        .collect();
    Ok(MomentStream::new(g, Provider::Combined))
}

#[derive(Serialize, Deserialize)]
struct MomentFile {
    #[serde(rename = "D", default)]
    d: u64,
    g: Vec<QuadElem>,
}

impl MomentStream<QuadElem> {
    /// Reads `{"D": 17, "g": [...]}` with coefficients in any QuadElem
    /// encoding. Returns the discriminant alongside the stream.
    pub fn from_json_str(s: &str) -> Result<(u64, Self)> {
        let f: MomentFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(bad) = f.g.iter().find(|x| !x.is_rational() && x.d() != f.d) {
            return Err(Error::Parse(format!("moment {bad} does not live in Q(sqrt {})", f.d)));
        }
        Ok((f.d, MomentStream::explicit(f.g)))
    }

    pub fn to_json_string(&self, d: u64) -> String {
        serde_json::to_string(&MomentFile { d, g: self.g.clone() }).expect("moments encode")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, Rational};

    fn stream(g: &[Rational]) -> MomentStream<Rational> {
        MomentStream::explicit(g.to_vec())
    }

    #[test]
    fn combination_examples() {
        let g = stream(&[int(1), rat(7, 20), rat(4053, 16000)]);
        assert_eq!(combined_moments(&[g.clone()], &[int(1)]).unwrap().as_slice(), g.as_slice());
        let half = rat(1, 2);
        let c = combined_moments(&[g.clone(), g.clone()], &[half.clone(), half]).unwrap();
        assert_eq!(c.as_slice(), g.as_slice());
        assert_eq!(c.provider(), Provider::Combined);
        let short = stream(&[int(1)]);
        assert!(matches!(combined_moments(&[g, short], &[int(1), int(1)]), Err(Error::LengthMismatch(_))));
    }

    #[test]
    fn finite_provider_refuses_overreach() {
        let g = stream(&[int(1), int(2)]);
        assert!(matches!(g.get(2), Err(Error::Precision { needed: 3, available: 2 })));
    }

    #[test]
    fn moment_file_forms() {
        let (d, g) = MomentStream::from_json_str(
            r#"{"D":17,"g":["1",{"a":"27/8","b":"-5/8","D":17},{"alpha":["1","0"],"D":17}]}"#,
        )
        .unwrap();
        assert_eq!(d, 17);
        assert_eq!(g.len(), 3);
        assert_eq!(g.get(1).unwrap().to_sqrt_string(), "(27-5*sqrt(17))/8");
        let (_, again) = MomentStream::from_json_str(&g.to_json_string(17)).unwrap();
        assert_eq!(again, g);
    }
}
