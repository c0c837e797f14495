//! Pipeline results against the brute-force oracles, and the moment
//! backends against each other.

use crate::error::{Error, Result};
use crate::exact_arith::{FFElem, FiniteField, Rational};
use crate::loci::{compute_locus, partial_hasse};
use crate::oracles::{lift_poly, nonordinary_fibers_delta25_in, roots_in, ss_elliptic_j_in, EtaRelation};
use crate::pade_ortho::{gram_schmidt, orthogonal_polys_cf, pade_denominator, pade_euclid, pade_numerator, MomentStream};
use crate::picard_fuchs::{preset, CurvePreset};
use crate::poly_series::Poly;
use crate::scalar::Field;

/// One comparison over a common model of `F_{p^2}`.
///
/// The oracle only sees fibers defined over `F_{p^2}`, so by default the
/// root sets in `F_{p^2}` are compared; irreducible factors of higher degree
/// in the pipeline polynomial are invisible to it. With `full` the
/// polynomials themselves must coincide.
#[derive(Clone, Debug)]
pub struct Agreement {
    pub p: u64,
    pub branch: usize,
    pub pipeline: Poly<FFElem>,
    pub pipeline_roots: Vec<FFElem>,
    pub oracle_roots: Vec<FFElem>,
    pub full: bool,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.pipeline_roots == self.oracle_roots
            && (!self.full || self.pipeline == Poly::from_roots(&self.oracle_roots))
    }
}

fn quadratic_model(ctx: &crate::PrimeContext) -> Result<FiniteField> {
    let f = ctx.residue_field();
    if f.is_quadratic() {
        Ok(f)
    } else {
        FiniteField::quadratic_default(ctx.p())
    }
}

/// `no_p` of `Δ(2,5,∞)` on every branch against the non-ordinary fibers.
pub fn delta25_agreement(p: u64) -> Result<Vec<Agreement>> {
    let pr = preset("delta-2-5")?;
    let ctx = pr.context(p)?;
    let field = quadratic_model(&ctx)?;
    let scan = nonordinary_fibers_delta25_in(field, EtaRelation::Standard)?;
    let locus = compute_locus(&pr, p, None)?;
    Ok(locus
        .branches
        .iter()
        .map(|b| {
            let pipeline = lift_poly(&b.no, field);
            Agreement {
                p,
                branch: b.branch,
                pipeline_roots: roots_in(&pipeline, field),
                pipeline,
                oracle_roots: scan.nonordinary.clone(),
                full: false,
            }
        })
        .collect())
}

/// The `SL_2(Z)` Atkin polynomial of the oracle's degree, reduced mod `p`
/// and rewritten in `j = 1728 J`, against the supersingular j-invariants.
pub fn sl2_agreement(p: u64) -> Result<Agreement> {
    let pr = preset("delta-2-3")?;
    let ctx = pr.context(p)?;
    let field = FiniteField::quadratic_default(p)?;
    let ss = ss_elliptic_j_in(field);
    let ph = partial_hasse(&pr, &ctx, 1, 0, Some(ss.len()))?.ph;
    let c = field.from_i64(1728).inv().ok_or(Error::DivisionByZero)?;
    let mut scale = field.one();
    let coeffs = lift_poly(&ph, field)
        .coeffs()
        .iter()
        .map(|a| {
            let v = *a * scale;
            scale = scale * c;
            v
        })
        .collect();
    let pipeline = Poly::new(coeffs).monic();
    Ok(Agreement { p, branch: 0, pipeline_roots: roots_in(&pipeline, field), pipeline, oracle_roots: ss, full: true })
}

/// Palindromicity of every partial Hasse polynomial at `p`, branch by branch.
pub fn palindromes(pr: &CurvePreset, p: u64) -> Result<Vec<bool>> {
    let l = compute_locus(pr, p, None)?;
    Ok(l.branches.iter().flat_map(|b| b.components.iter().map(|c| c.ph.is_palindrome())).collect())
}

/// Result of [`backends_agree`]: the highest order `m` whose Hankel minors
/// are all nonsingular, and whether every backend matched up to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BackendCheck {
    pub order: usize,
    pub agrees: bool,
}

/// Hankel-Padé, Euclid-Padé, Gram–Schmidt and CF-recurrence agree at every
/// order up to `max_m` (or the first singular Hankel minor), and each
/// `[m-1, m]` approximant matches the moments through `x^(-2m)`.
pub fn backends_agree(g: &MomentStream<Rational>, max_m: usize) -> Result<BackendCheck> {
    let mut hankel = vec![Poly::one()];
    for m in 1..=max_m {
        match pade_denominator(g, m) {
            Ok(t) => hankel.push(t),
            Err(Error::PadeNotExists { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let order = hankel.len() - 1;
    let fail = BackendCheck { order, agrees: false };
    let gs = gram_schmidt(g, order)?;
    let cf = orthogonal_polys_cf(g, order)?;
    for (m, t) in hankel.iter().enumerate() {
        if *t != gs[m] || *t != cf[m] {
            return Ok(fail);
        }
        if m == 0 {
            continue;
        }
        let s = pade_numerator(g, t)?;
        if pade_euclid(g, m)? != (t.clone(), s.clone()) {
            return Ok(fail);
        }
        if crate::pade_ortho::expand_ratio(&s, t, 2 * m) != g.as_slice()[..2 * m] {
            return Ok(fail);
        }
    }
    Ok(BackendCheck { order, agrees: true })
}

/// Seeded random moment streams with `g_0 = 1` and the other entries
/// `a/b`, `a` in `[-9, 9]`, `b` in `[1, 9]`.
pub fn random_streams(seed: u64, count: usize, len: usize) -> Vec<MomentStream<Rational>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g = std::iter::once(Rational::from_integer(1.into()))
                .chain((1..len).map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into())))
                .collect();
            MomentStream::explicit(g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn worked_primes_agree() {
        for p in [7, 11, 13] {
            for a in delta25_agreement(p).unwrap() {
                assert!(a.agrees(), "p = {p}: {}", a.pipeline);
            }
        }
        for p in [5, 7, 11, 13] {
            assert!(sl2_agreement(p).unwrap().agrees());
        }
    }

    #[test]
    fn backends_on_known_streams() {
        let g = MomentStream::explicit(vec![int(1), rat(7, 20), rat(4053, 16000), rat(666729, 3200000)]);
        assert_eq!(backends_agree(&g, 2).unwrap(), BackendCheck { order: 2, agrees: true });
        let geo = MomentStream::explicit((0..6).map(|k| rat(2, 3).pow(k)).collect());
        assert_eq!(backends_agree(&geo, 3).unwrap(), BackendCheck { order: 1, agrees: true });
        let odd = MomentStream::explicit(vec![int(1), int(0), int(1), int(0), int(3), int(0)]);
        assert_eq!(backends_agree(&odd, 3).unwrap(), BackendCheck { order: 3, agrees: true });
    }
}
