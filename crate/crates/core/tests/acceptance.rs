//! Acceptance criteria 1-10, one line each. Run with
//! `cargo test -p atkin-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use atkin_core::crosscheck::{backends_agree, delta25_agreement, random_streams, sl2_agreement};
use atkin_core::exact_arith::rational::{is_p_integral, odd_primes};
use atkin_core::exact_arith::{int, rat};
use atkin_core::fixtures::{self, Status};
use atkin_core::loci::{assemble_loci, combined_atkin, compute_locus, Locus};
use atkin_core::oracles::{legendre_hasse, legendre_j, lift_poly, roots_in, ss_elliptic_j_in};
use atkin_core::pade_ortho::pade_denominator;
use atkin_core::picard_fuchs::{phi_moments, preset, solve_series, truncation_ph, CurvePreset};
use atkin_core::{FFElem, FiniteField, FpPoly, KPoly, Poly, QuadElem};

enum Verdict {
    Pass(String),
    Fail(String),
    Skipped(String),
}

use Verdict::*;

type Loci = Vec<(CurvePreset, Locus)>;

fn roots(f: FiniteField, rs: &[i64]) -> FpPoly {
    Poly::from_roots(&rs.iter().map(|&r| f.from_i64(r)).collect::<Vec<_>>())
}

fn c1() -> Verdict {
    let pr = preset("delta-2-5").unwrap();
    let fx = fixtures::load();
    let mut n = 0;
    for f in fx.atkin.iter().filter(|f| f.preset == "delta-2-5") {
        let got = pade_denominator(&pr.moments(f.j, 2 * f.n).unwrap(), f.n).unwrap();
        if got != Poly::new(f.coeffs.clone()) {
            return Fail(format!("A_{{{},{}}} = {got}, printed {}", f.j, f.n, f.printed));
        }
        n += 1;
    }
    if n == 5 {
        Pass("5 polynomials".into())
    } else {
        Fail(format!("{n} fixtures, expected 5"))
    }
}

/// Expected `(no, sp)` roots at the three worked primes; for an inert prime
/// `ss = no`, for a split one `ss = sp`.
const WORKED: [(u64, &[i64], &[i64]); 3] = [(7, &[0, 5], &[]), (11, &[1, 8], &[1]), (13, &[0, 1, 9], &[1])];

fn c2(loci: &mut Loci) -> Verdict {
    let pr = preset("delta-2-5").unwrap();
    let mut truncated = 0;
    for (p, no_roots, sp_roots) in WORKED {
        let ctx = pr.context(p).unwrap();
        let field = ctx.residue_field();
        let (no, sp) = (roots(field, no_roots), roots(field, sp_roots));
        let l = match compute_locus(&pr, p, None) {
            Ok(l) => l,
            Err(e) => return Fail(format!("p = {p}: {e}")),
        };
        for b in &l.branches {
            let ss = if ctx.splitting().is_split() { &sp } else { &no };
            if b.no != no || b.sp != sp || b.ss.as_ref() != Some(ss) {
                return Fail(format!("Padé path at p = {p}, branch {}: no = {}, sp = {}", b.branch, b.no, b.sp));
            }
            let mut phs = Vec::new();
            for j in 1..=2 {
                match truncation_ph(&pr, p, j, b.branch, None) {
                    Ok(r) => phs.push(r.ph),
                    Err(e) => return Fail(format!("truncation path at p = {p}, j = {j}: {e}")),
                }
            }
            let (tno, tsp, _) = assemble_loci(&phs, ctx.splitting()).unwrap();
            if tno != no || tsp != sp {
                return Fail(format!("truncation path at p = {p}: no = {tno}, sp = {tsp}"));
            }
            truncated += 1;
            let comb = combined_atkin(&pr, &ctx, b.branch, no.degree().unwrap()).unwrap();
            if comb != no {
                return Fail(format!("combined stream at p = {p}: {comb}"));
            }
        }
        loci.push((pr.clone(), l));
    }
    Pass(format!("Padé, truncation ({truncated} branches) and combined stream"))
}

fn euler_symbol(d: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = d % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn c3() -> Verdict {
    let d25 = preset("delta-2-5").unwrap();
    let want = [(7, 1, 1), (7, 2, 1), (11, 1, 2), (11, 2, 1), (13, 1, 1), (13, 2, 3)];
    for (p, j, n) in want {
        match d25.degree_of_ph(p, j) {
            Ok(got) if got == n => {}
            other => return Fail(format!("n_{{{p},{j}}} = {other:?}, expected {n}")),
        }
    }
    let w = preset("w17").unwrap();
    let primes: Vec<u64> = odd_primes(3, 99).into_iter().filter(|&p| p != 17).collect();
    for &p in &primes {
        let (n1, n2) = if euler_symbol(17, p) == 1 { (3 * (p - 1) / 2, (p - 1) / 2) } else { ((p - 3) / 2, (3 * p - 1) / 2) };
        for (j, n) in [(1, n1), (2, n2)] {
            match w.degree_of_ph(p, j) {
                Ok(got) if got as u64 == n => {}
                other => return Fail(format!("W17 n_{{{p},{j}}} = {other:?}, expected {n}")),
            }
        }
    }
    Pass(format!("6 Δ(2,5,∞) values, W17 at {} primes", primes.len()))
}

fn c4() -> Verdict {
    let primes = odd_primes(5, 47);
    for &p in &primes {
        match sl2_agreement(p) {
            Ok(a) if a.agrees() => {}
            Ok(a) => return Fail(format!("p = {p}: {} vs oracle {:?}", a.pipeline, a.oracle_roots)),
            Err(e) => return Fail(format!("p = {p}: {e}")),
        }
    }
    Pass(format!("{} primes", primes.len()))
}

fn c5(loci: &mut Loci) -> Verdict {
    let pr = preset("delta-2-5").unwrap();
    let mut branches = 0;
    for p in [7, 11, 13, 17, 19, 23, 29, 31] {
        match delta25_agreement(p) {
            Ok(v) => {
                for a in &v {
                    if !a.agrees() {
                        return Fail(format!("p = {p}, branch {}: {:?} vs {:?}", a.branch, a.pipeline_roots, a.oracle_roots));
                    }
                }
                branches += v.len();
            }
            Err(e) => return Fail(format!("p = {p}: {e}")),
        }
        loci.push((pr.clone(), compute_locus(&pr, p, None).unwrap()));
    }
    Pass(format!("8 primes, {branches} branches"))
}

fn c6() -> Verdict {
    let mut full = 0;
    for (i, g) in random_streams(20_240_601, 100, 13).iter().enumerate() {
        match backends_agree(g, 6) {
            Ok(r) if r.agrees => full += usize::from(r.order == 6),
            Ok(r) => return Fail(format!("stream {i} disagrees below m = {}", r.order)),
            Err(e) => return Fail(format!("stream {i}: {e}")),
        }
    }
    Pass(format!("100 streams, {full} nonsingular through m = 6"))
}

fn c7() -> Verdict {
    let w = preset("w17").unwrap();
    let a = pade_denominator(&w.moments(1, 2).unwrap(), 1).unwrap();
    let c = QuadElem::new(rat(-27, 8), rat(5, 8), 17).unwrap();
    let want: KPoly = Poly::new(vec![c, QuadElem::rational(int(1))]);
    if a != want {
        return Fail(format!("A_{{1,1}} = {a}"));
    }
    let ctx = w.context(5).unwrap();
    let f = ctx.residue_field();
    let j_plus_1 = Poly::new(vec![f.one(), f.one()]);
    let reduced = a.try_map(|x| ctx.reduce(x, 0)).unwrap();
    let ph = compute_ph(&w, 5, 1);
    if reduced != j_plus_1 || ph.as_ref() != Ok(&j_plus_1) {
        return Fail(format!("mod 5: {reduced}, ph_{{5,1}} = {ph:?}"));
    }
    let errata: Vec<String> = fixtures::check_all(&fixtures::load())
        .into_iter()
        .filter(|o| matches!(o.status, Status::Erratum(_)))
        .map(|o| o.name)
        .collect();
    if errata != ["w17 A(j=1, n=1)", "w17 A(j=2, n=1)"] {
        return Fail(format!("errata reported: {errata:?}"));
    }
    Pass("A_{1,1} mod 5 = J + 1 = ph_{5,1}; 2 documented errata".into())
}

fn compute_ph(pr: &CurvePreset, p: u64, j: usize) -> Result<FpPoly, String> {
    let ctx = pr.context(p).map_err(|e| e.to_string())?;
    atkin_core::loci::partial_hasse(pr, &ctx, j, 0, None).map(|c| c.ph).map_err(|e| e.to_string())
}

fn c8(loci: &mut Loci) -> Verdict {
    let w = preset("w17").unwrap();
    let mut odes = Vec::new();
    for j in 1..=2 {
        match w.ode(j) {
            Ok(Some(o)) => odes.push(o),
            Ok(None) => {
                return Skipped(format!(
                    "no Picard–Fuchs operator for W17 j = {j}; only {} listed moments",
                    w.listed_moments(j).ok().flatten().map_or(0, |g| g.len())
                ))
            }
            Err(e) => return Fail(e.to_string()),
        }
    }
    for (j, ode) in (1..=2).zip(&odes) {
        let listed = w.listed_moments(j).unwrap().unwrap();
        let y = match solve_series(ode, listed.len() + 1) {
            Ok(y) => y,
            Err(e) => return Fail(e.to_string()),
        };
        let g = phi_moments(&y, &w, j).unwrap();
        if g.as_slice()[..listed.len()] != *listed.as_slice() {
            return Fail(format!("solve_series moments for j = {j} differ from the listed ones"));
        }
    }
    let out = fixtures::check_all(&fixtures::load());
    if let Some(o) = out.iter().find(|o| o.tier == 2 && o.status != Status::Pass) {
        return Fail(format!("{}: {:?}", o.name, o.status));
    }
    for p in odd_primes(3, 99).into_iter().filter(|&p| p != 17) {
        match compute_locus(&w, p, None) {
            Ok(l) if l.branches.iter().all(|b| b.components.iter().all(|c| c.ph.is_palindrome())) => loci.push((w.clone(), l)),
            Ok(_) => return Fail(format!("p = {p}: some ph is not palindromic")),
            Err(e) => return Fail(format!("p = {p}: {e}")),
        }
    }
    Pass("tier 2 fixtures and palindromes for p < 100".into())
}

fn c9() -> Verdict {
    for p in odd_primes(3, 199) {
        let h = legendre_hasse(p).unwrap();
        if !h.is_palindrome() {
            return Fail(format!("H_{p} is not self-reciprocal"));
        }
    }
    for p in odd_primes(3, 31) {
        let f = FiniteField::quadratic_default(p).unwrap();
        let image: BTreeSet<(u64, u64)> = roots_in(&lift_poly(&legendre_hasse(p).unwrap(), f), f)
            .into_iter()
            .filter_map(legendre_j)
            .map(|x| x.coords())
            .collect();
        let ss: BTreeSet<(u64, u64)> = ss_elliptic_j_in(f).into_iter().map(|x| x.coords()).collect();
        if image != ss {
            return Fail(format!("p = {p}: j(roots) = {image:?}, supersingular {ss:?}"));
        }
    }
    Pass("palindromic for p <= 199, roots onto ss j for p <= 31".into())
}

fn integral(x: &QuadElem, p: u64) -> bool {
    is_p_integral(x.a(), p) && is_p_integral(x.b(), p)
}

fn c10(loci: &Loci) -> Verdict {
    let mut count = 0;
    for (pr, l) in loci {
        for b in &l.branches {
            for c in &b.components {
                let n = pr.degree_of_ph(l.p, c.j).unwrap();
                let ok = c.n == n
                    && c.a.degree() == Some(n)
                    && c.a.coeffs().iter().all(|x| integral(x, l.p))
                    && c.ph.degree() == Some(n)
                    && c.ph.is_monic()
                    && c.ph.coeffs().iter().all(|x: &FFElem| x.field().is_some());
                if !ok {
                    return Fail(format!("{} p = {}, j = {}: A = {}, ph = {}", pr.name, l.p, c.j, c.a, c.ph));
                }
                count += 1;
            }
        }
    }
    Pass(format!("{count} partial Hasse polynomials from {} loci", loci.len()))
}

fn main() -> ExitCode {
    let mut loci = Loci::new();
    let criteria: Vec<(&str, Option<Duration>, Box<dyn FnOnce(&mut Loci) -> Verdict>)> = vec![
        ("Δ(2,5,∞) Atkin fixtures", Some(Duration::from_secs(1)), Box::new(|_| c1())),
        ("Δ(2,5,∞) loci at 7, 11, 13", Some(Duration::from_secs(5)), Box::new(c2)),
        ("degree formulas", None, Box::new(|_| c3())),
        ("SL2(Z) oracle, 5 <= p <= 47", Some(Duration::from_secs(30)), Box::new(|_| c4())),
        ("Δ(2,5,∞) Cartier–Manin oracle", Some(Duration::from_secs(120)), Box::new(c5)),
        ("backend equivalence", None, Box::new(|_| c6())),
        ("W17 tier 1", None, Box::new(|_| c7())),
        ("W17 tier 2", None, Box::new(c8)),
        ("Legendre properties", None, Box::new(|_| c9())),
        ("p-integrality and monic reduction", None, Box::new(|l| c10(l))),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut v = run(&mut loci);
        let dt = t.elapsed();
        if let (Pass(msg), Some(b)) = (&v, budget) {
            if dt > b {
                v = Fail(format!("{msg}, but took {dt:.2?} (budget {b:?})"));
            }
        }
        let (label, msg) = match &v {
            Pass(m) => ("PASS", m),
            Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
            Skipped(m) => ("SKIPPED", m),
        };
        println!("criterion {:>2} {label:<7} {name}: {msg} [{dt:.2?}]", i + 1);
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
