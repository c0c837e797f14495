//! `atkin`: batch front end for the exact Atkin-polynomial pipeline.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use atkin_core::crosscheck::{backends_agree, delta25_agreement, palindromes, random_streams, sl2_agreement};
use atkin_core::exact_arith::rational::{is_prime, odd_primes};
use atkin_core::fixtures::{self, Status};
use atkin_core::loci::{compute_loci, compute_locus, render_alpha, Locus};
use atkin_core::oracles::{legendre_hasse, lift_poly, nonordinary_fibers_delta25, roots_in, ss_elliptic_j};
use atkin_core::pade_ortho::{gram_schmidt, orthogonal_polys_cf, pade_denominator, pade_euclid, pade_numerator};
use atkin_core::picard_fuchs::{embedded_file, parse_registry, preset, solve_series, CurvePreset, ODESpec};
use atkin_core::scalar::Notation;
use atkin_core::{FiniteField, KMoments, KPoly, Poly};

#[derive(Parser)]
#[command(name = "atkin", version, about = "Exact Atkin polynomials and non-ordinary loci mod p")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Preset registry JSON to use instead of the built-in one.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Atkin polynomials A_{j,0..count}.
    Atkin(AtkinArgs),
    /// Partial Hasse polynomials and the loci no/sp/ss at one or more primes.
    Locus(LocusArgs),
    /// Moments g_0.. of a component.
    Moments(MomentArgs),
    /// The [m-1, m] Padé approximant S/T of the moment generating function.
    Pade(PadeArgs),
    #[command(subcommand)]
    Oracle(OracleCmd),
    #[command(subcommand)]
    Check(CheckCmd),
    /// Power-series solution y = 1 + O(t) of a Picard–Fuchs operator.
    SolveOde(SolveOdeArgs),
}

#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "moments")]
    preset: Option<String>,
    /// Moment file `{"D": .., "g": [..]}`.
    #[arg(long)]
    moments: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    j: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Auto,
    Alpha,
    Sqrt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Pade,
    Gs,
    Cf,
}

#[derive(Args)]
struct AtkinArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, default_value_t = 2)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Basis::Auto)]
    basis: Basis,
    #[arg(long, value_enum, default_value_t = Route::Pade)]
    route: Route,
}

#[derive(Args)]
struct LocusArgs {
    #[arg(long)]
    preset: String,
    #[arg(long, conflicts_with = "primes", required_unless_present = "primes")]
    prime: Option<u64>,
    /// `7,11,13` or an inclusive range `3..100`.
    #[arg(long)]
    primes: Option<String>,
    /// Override n_{p,j}, one entry per component.
    #[arg(long, value_delimiter = ',')]
    degree: Option<Vec<usize>>,
    #[arg(long)]
    branch: Option<usize>,
    #[arg(long, value_enum, default_value_t = Basis::Auto)]
    basis: Basis,
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long)]
    preset: String,
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long, default_value_t = 6)]
    count: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PadeMethod {
    Hankel,
    Euclid,
}

#[derive(Args)]
struct PadeArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = PadeMethod::Hankel)]
    method: PadeMethod,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Supersingular j-invariants in F_{p^2}.
    SsElliptic {
        #[arg(long)]
        prime: u64,
    },
    /// The Legendre Hasse polynomial H_p(λ) and its roots.
    Legendre {
        #[arg(long)]
        prime: u64,
    },
    /// Non-ordinary fibers of the genus-2 family over F_{p^2}, by Cartier–Manin.
    Delta25 {
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Self-reciprocity of every ph_{p,j} for odd good p up to a bound.
    Palindrome {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 100)]
        max_prime: u64,
    },
    /// Pipeline loci against the brute-force oracles.
    Oracle {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "7,11,13")]
        primes: String,
    },
    /// The bundled golden polynomials.
    Fixtures,
    /// Padé, Gram–Schmidt and continued-fraction backends on random streams.
    Backends {
        #[arg(long, default_value_t = 100)]
        streams: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
    },
}

#[derive(Args)]
struct SolveOdeArgs {
    /// Operator file `{"D":..,"S":[..],"p2":..,"p1":..,"p0":..}`.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    ode: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long, default_value_t = 8)]
    order: usize,
}

/// A mathematical refusal raised by the front end itself.
#[derive(Debug)]
struct Refusal(String);

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Refusal {}

enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Refusal>().is_some() {
        return 1;
    }
    match e.downcast_ref::<atkin_core::Error>() {
        Some(core) if core.is_refusal() => 1,
        _ => 3,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let ctx = Ctx { format: cli.format, registry: cli.registry.clone() };
    match &cli.cmd {
        Cmd::Atkin(a) => ctx.atkin(a),
        Cmd::Locus(a) => ctx.locus(a),
        Cmd::Moments(a) => ctx.moments(a),
        Cmd::Pade(a) => ctx.pade(a),
        Cmd::Oracle(o) => ctx.oracle(o),
        Cmd::Check(c) => ctx.check(c),
        Cmd::SolveOde(a) => ctx.solve_ode(a),
    }
}

/// Reads a data file from disk, falling back to the files shipped with the
/// core crate when only a bare name is given.
fn read_data(path: &Path) -> anyhow::Result<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => path
            .file_name()
            .filter(|_| path.components().count() == 1)
            .and_then(|n| embedded_file(&n.to_string_lossy()))
            .map(str::to_string)
            .ok_or(e)
            .with_context(|| format!("reading {}", path.display())),
    }
}

/// `7,11,13` or `lo..hi` (inclusive).
fn parse_primes(s: &str) -> anyhow::Result<Vec<u64>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().context("prime range start")?;
        let hi: u64 = hi.trim().trim_start_matches('=').parse().context("prime range end")?;
        return Ok(odd_primes(lo, hi));
    }
    s.split(',')
        .map(|t| {
            let p: u64 = t.trim().parse().with_context(|| format!("bad prime {t:?}"))?;
            if !is_prime(p) {
                bail!(atkin_core::Error::Invalid(format!("{p} is not prime")));
            }
            Ok(p)
        })
        .collect()
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("output encodes"));
}

fn use_alpha(basis: Basis, d: u64) -> bool {
    match basis {
        Basis::Auto => d == 17,
        Basis::Alpha => d % 4 == 1,
        Basis::Sqrt => false,
    }
}

struct Ctx {
    format: Format,
    registry: Option<PathBuf>,
}

struct Check {
    name: String,
    status: Status,
}

impl Ctx {
    fn preset(&self, name: &str) -> anyhow::Result<CurvePreset> {
        let Some(path) = &self.registry else {
            return Ok(preset(name)?);
        };
        let text = read_data(path)?;
        let all = parse_registry(&text, path.parent())?;
        all.into_iter().find(|p| p.name == name).ok_or_else(|| atkin_core::Error::UnknownPreset(name.into()).into())
    }

    fn stream(&self, src: &Source, count: usize) -> anyhow::Result<(u64, KMoments)> {
        match (&src.preset, &src.moments) {
            (Some(name), None) => {
                let pr = self.preset(name)?;
                Ok((pr.d, pr.moments(src.j, count)?))
            }
            (None, Some(path)) => Ok(KMoments::from_json_str(&read_data(path)?)?),
            _ => bail!(atkin_core::Error::Invalid("give exactly one of --preset and --moments".into())),
        }
    }

    fn render_k(&self, a: &KPoly, alpha: bool) -> String {
        if alpha {
            render_alpha(a)
        } else {
            a.render("J")
        }
    }

    fn atkin(&self, a: &AtkinArgs) -> anyhow::Result<Outcome> {
        let (d, g) = self.stream(&a.src, (2 * a.count).max(1))?;
        let polys: Vec<KPoly> = match a.route {
            Route::Pade => (0..=a.count).map(|n| pade_denominator(&g, n)).collect::<Result<_, _>>()?,
            Route::Gs => gram_schmidt(&g, a.count)?,
            Route::Cf => orthogonal_polys_cf(&g, a.count)?,
        };
        let alpha = use_alpha(a.basis, d);
        if self.format == Format::Json {
            let rendered: Vec<Value> = polys.iter().map(|p| p.to_json("J")).collect();
            print_json(&json!({ "D": d, "j": a.src.j, "A": rendered }));
        } else {
            for (n, p) in polys.iter().enumerate() {
                println!("A_{{{},{}}} = {}", a.src.j, n, self.render_k(p, alpha));
            }
        }
        Ok(Outcome::Ok)
    }

    fn locus(&self, a: &LocusArgs) -> anyhow::Result<Outcome> {
        let pr = self.preset(&a.preset)?;
        let alpha = use_alpha(a.basis, pr.d);
        let results: Vec<(u64, atkin_core::Result<Locus>)> = match a.prime {
            Some(p) => vec![(p, compute_locus(&pr, p, a.degree.as_deref()))],
            None => {
                let (good, excluded) = good_primes(&pr, &parse_primes(a.primes.as_deref().unwrap_or_default())?);
                if !excluded.is_empty() {
                    eprintln!("warning: excluding bad or ramified primes {excluded:?} for {}", pr.name);
                }
                match &a.degree {
                    Some(deg) => good.iter().map(|&p| (p, compute_locus(&pr, p, Some(deg)))).collect(),
                    None => compute_loci(&pr, &good),
                }
            }
        };
        let single = a.prime.is_some();
        let mut reports = Vec::new();
        let mut refused = None;
        for (p, r) in results {
            let mut l = match r {
                Ok(l) => l,
                Err(e) if single => return Err(e.into()),
                Err(e) => {
                    eprintln!("p = {p}: {e}");
                    refused.get_or_insert(e);
                    continue;
                }
            };
            if let Some(b) = a.branch {
                if b >= l.branches.len() {
                    if single {
                        bail!(atkin_core::Error::Invalid(format!("branch {b} out of range at p = {p}")));
                    }
                    eprintln!("p = {p}: no branch {b} ({})", l.splitting.label());
                    continue;
                }
                l.branches.retain(|x| x.branch == b);
            }
            match self.format {
                Format::Text => print!("{}", l.render_text(alpha)),
                Format::Json => reports.push(l.report()),
            }
        }
        if self.format == Format::Json {
            if single {
                println!("{}", reports[0].to_json_string());
            } else {
                print_json(&reports);
            }
        }
        match refused {
            Some(e) => Err(e.into()),
            None => Ok(Outcome::Ok),
        }
    }

    fn moments(&self, a: &MomentArgs) -> anyhow::Result<Outcome> {
        let pr = self.preset(&a.preset)?;
        let g = pr.moments(a.j, a.count)?;
        if self.format == Format::Json {
            println!("{}", g.to_json_string(pr.d));
        } else {
            for (n, x) in g.as_slice().iter().enumerate() {
                println!("g_{n} = {x}");
            }
        }
        Ok(Outcome::Ok)
    }

    fn pade(&self, a: &PadeArgs) -> anyhow::Result<Outcome> {
        let (_, g) = self.stream(&a.src, (2 * a.m).max(1))?;
        let (t, s) = match a.method {
            PadeMethod::Hankel => {
                let t = pade_denominator(&g, a.m)?;
                let s = if a.m == 0 { Poly::zero() } else { pade_numerator(&g, &t)? };
                (t, s)
            }
            PadeMethod::Euclid => pade_euclid(&g, a.m)?,
        };
        if self.format == Format::Json {
            print_json(&json!({ "m": a.m, "S": s.to_json("x"), "T": t.to_json("x") }));
        } else {
            println!("T = {}", t.render("x"));
            println!("S = {}", s.render("x"));
        }
        Ok(Outcome::Ok)
    }

    fn oracle(&self, o: &OracleCmd) -> anyhow::Result<Outcome> {
        let (what, p, poly, roots, singular) = match *o {
            OracleCmd::SsElliptic { prime } => ("ss-elliptic", prime, None, ss_elliptic_j(prime)?, None),
            OracleCmd::Legendre { prime } => {
                let h = legendre_hasse(prime)?;
                let f2 = FiniteField::quadratic_default(prime)?;
                let roots = roots_in(&lift_poly(&h, f2), f2);
                ("legendre", prime, Some(h), roots, None)
            }
            OracleCmd::Delta25 { prime } => {
                let scan = nonordinary_fibers_delta25(prime)?;
                ("delta25", prime, None, scan.nonordinary, Some(scan.singular))
            }
        };
        let w2 = FiniteField::quadratic_default(p)?.d();
        if self.format == Format::Json {
            let enc = |v: &[atkin_core::FFElem]| v.iter().map(Notation::to_json).collect::<Vec<_>>();
            let mut out = json!({ "oracle": what, "p": p, "w^2": w2, "roots": enc(&roots) });
            if let Some(h) = &poly {
                out["H"] = h.to_json("lambda");
            }
            if let Some(s) = &singular {
                out["singular"] = Value::from(enc(s));
            }
            print_json(&out);
        } else {
            println!("{what}  p = {p}  (F_{{p^2}} = F_p[w], w^2 = {w2})");
            if let Some(h) = &poly {
                println!("H_p = {}", h.render("lambda"));
            }
            let list = |v: &[atkin_core::FFElem]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            println!("roots = {{{}}}", list(&roots));
            if let Some(s) = &singular {
                println!("singular = {{{}}}", list(s));
            }
        }
        Ok(Outcome::Ok)
    }

    fn check(&self, c: &CheckCmd) -> anyhow::Result<Outcome> {
        let checks = match c {
            CheckCmd::Palindrome { preset, max_prime } => {
                let pr = self.preset(preset)?;
                let (good, excluded) = good_primes(&pr, &odd_primes(3, *max_prime));
                if !excluded.is_empty() {
                    eprintln!("warning: excluding bad or ramified primes {excluded:?} for {}", pr.name);
                }
                good.iter()
                    .map(|&p| Check {
                        name: format!("{} p = {p}", pr.name),
                        status: match palindromes(&pr, p) {
                            Ok(v) if v.iter().all(|&b| b) => Status::Pass,
                            Ok(v) => Status::Fail(format!("palindromic flags {v:?}")),
                            Err(e) if e.is_refusal() => Status::Skipped(e.to_string()),
                            Err(e) => Status::Fail(e.to_string()),
                        },
                    })
                    .collect()
            }
            CheckCmd::Oracle { preset, primes } => self.check_oracle(preset, &parse_primes(primes)?)?,
            CheckCmd::Fixtures => fixtures::check_all(&fixtures::load())
                .into_iter()
                .map(|o| Check { name: format!("{} [tier {}]", o.name, o.tier), status: o.status })
                .collect(),
            CheckCmd::Backends { streams, seed, max_m } => random_streams(*seed, *streams, 2 * max_m + 1)
                .iter()
                .enumerate()
                .map(|(i, g)| Check {
                    name: format!("stream {i}"),
                    status: match backends_agree(g, *max_m) {
                        Ok(r) if r.agrees => Status::Pass,
                        Ok(r) => Status::Fail(format!("backends differ below m = {}", r.order)),
                        Err(e) => Status::Fail(e.to_string()),
                    },
                })
                .collect(),
        };
        Ok(self.report_checks(&checks))
    }

    fn check_oracle(&self, name: &str, primes: &[u64]) -> anyhow::Result<Vec<Check>> {
        let pr = self.preset(name)?;
        let agreements = |p: u64| match pr.name.as_str() {
            "delta-2-5" => delta25_agreement(p),
            "delta-2-3" => sl2_agreement(p).map(|a| vec![a]),
            other => Err(atkin_core::Error::Invalid(format!("no oracle for preset {other}"))),
        };
        let mut out = Vec::new();
        for &p in primes {
            match agreements(p) {
                Ok(v) => out.extend(v.into_iter().map(|a| Check {
                    name: format!("{} p = {p} branch {}", pr.name, a.branch),
                    status: if a.agrees() {
                        Status::Pass
                    } else {
                        Status::Fail(format!("pipeline roots {:?}, oracle roots {:?}", a.pipeline_roots, a.oracle_roots))
                    },
                })),
                Err(e @ atkin_core::Error::Invalid(_)) => return Err(e.into()),
                Err(e) => out.push(Check { name: format!("{} p = {p}", pr.name), status: Status::Fail(e.to_string()) }),
            }
        }
        Ok(out)
    }

    fn report_checks(&self, checks: &[Check]) -> Outcome {
        let count = |f: fn(&Status) -> bool| checks.iter().filter(|c| f(&c.status)).count();
        let failed = count(Status::is_failure);
        let skipped = count(|s| matches!(s, Status::Skipped(_)));
        if self.format == Format::Json {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    let detail = match &c.status {
                        Status::Pass => Value::Null,
                        Status::Erratum(s) | Status::Fail(s) | Status::Skipped(s) => Value::from(s.as_str()),
                    };
                    json!({ "name": c.name, "status": c.status.label(), "detail": detail })
                })
                .collect();
            print_json(&json!({ "checks": rows, "failed": failed, "skipped": skipped, "total": checks.len() }));
        } else {
            for c in checks {
                match &c.status {
                    Status::Pass => println!("{:<16} {}", c.status.label(), c.name),
                    Status::Erratum(s) | Status::Fail(s) | Status::Skipped(s) => {
                        println!("{:<16} {}: {s}", c.status.label(), c.name)
                    }
                }
            }
            println!("{} checks, {failed} failed, {skipped} skipped", checks.len());
        }
        if failed > 0 {
            Outcome::CheckFailed
        } else {
            Outcome::Ok
        }
    }

    fn solve_ode(&self, a: &SolveOdeArgs) -> anyhow::Result<Outcome> {
        let ode = match (&a.ode, &a.preset) {
            (Some(path), _) => ODESpec::from_json_str(&read_data(path)?)?
                .ok_or_else(|| Refusal(format!("{} holds no operator", path.display())))?,
            (None, Some(name)) => self
                .preset(name)?
                .ode(a.j)?
                .ok_or_else(|| Refusal(format!("no Picard–Fuchs operator is available for {name}, j = {}", a.j)))?,
            (None, None) => unreachable!("clap requires --ode or --preset"),
        };
        let y = solve_series(&ode, a.order)?;
        if self.format == Format::Json {
            let coeffs: Vec<Value> = y.coeffs().iter().map(Notation::to_json).collect();
            print_json(&json!({ "order": a.order, "y": coeffs }));
        } else {
            println!("y = {}", render_series(y.coeffs(), a.order));
        }
        Ok(Outcome::Ok)
    }
}

/// Splits off primes the preset refuses outright (bad, ramified, even).
fn good_primes(pr: &CurvePreset, primes: &[u64]) -> (Vec<u64>, Vec<u64>) {
    primes.iter().partition(|&&p| pr.context(p).is_ok())
}

/// Ascending rendering `1 + c_1*t + ... + O(t^order)`.
fn render_series<F: Notation + num_traits::Zero>(coeffs: &[F], order: usize) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (neg, mag) = c.signed_text();
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&match (k, mag.as_str()) {
            (0, _) => mag,
            (1, "1") => "t".into(),
            (_, "1") => format!("t^{k}"),
            (1, _) => format!("{mag}*t"),
            _ => format!("{mag}*t^{k}"),
        });
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} + O(t^{order})")
}
