use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;
use thetalab::checks::{self, Level};
use thetalab::fqm::{discriminant_group, MetaplecticWord, WeilRep};
use thetalab::io::*;
use thetalab::lift::{self, LiftOptions, LiftValue};
use thetalab::qseries::{classic_series, pairing, pairing_prime, VVSeries};
use thetalab::theta::{self, GrassmannPoint, Kernel};
use thetalab::{Error, Lattice};

const BUILD_ID: &str = env!("THETALAB_BUILD_ID");

#[derive(Parser)]
#[command(name = "thetalab", version, about = "Weil representations, theta series and regularized theta lifts")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant forms and Weil representations.
    Fqm {
        #[command(subcommand)]
        cmd: FqmCmd,
    },
    /// Named level-one q-expansions.
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// The bilinear pairing {g, f} of a holomorphic form with a weak Maass form.
    Pair {
        #[arg(long)]
        g: String,
        #[arg(long)]
        f: String,
        /// Sum only over strictly negative indices.
        #[arg(long)]
        prime: bool,
    },
    /// Exact identities in the Fock model.
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Theta series.
    Theta {
        #[command(subcommand)]
        cmd: ThetaCmd,
    },
    /// Regularized theta lifts.
    Lift {
        #[command(subcommand)]
        cmd: LiftCmd,
    },
    /// Runs the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum FqmCmd {
    /// Invariants, order, level and the table of q-values.
    Info {
        #[arg(long)]
        lattice: String,
    },
    /// The matrix of a word in S, T, S', T' (primes are inverses).
    Weil {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value = "S")]
        word: String,
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// E4, E6, Delta, j, j_minus_744 or E4sqE6_over_DeltaSq as Form JSON.
    Classic {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        prec: i64,
        /// Mark the (trivial) representation as dual, for use as a lift or pairing input.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum FockCmd {
    Verify {
        /// Signature as p,q.
        #[arg(long)]
        sig: String,
        /// closed, kmpsi, ddc, dcpsi, psiformel, euler, hermite or all.
        #[arg(long, default_value = "all")]
        identity: String,
    },
}

#[derive(Subcommand)]
enum ThetaCmd {
    Eval {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value = "phi0")]
        phi: String,
        /// tau as re,im.
        #[arg(long)]
        tau: String,
        /// Point JSON; the base point when omitted.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, env = "THETALAB_TOL", default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args, Clone)]
struct LiftArgs {
    #[arg(long, env = "THETALAB_TOL", default_value_t = 1e-6)]
    tol: f64,
    /// Gauss-Legendre nodes per panel.
    #[arg(long, default_value_t = 16)]
    nodes: usize,
    #[arg(long, default_value_t = 3)]
    max_level: usize,
    /// Minimal distance to the singular locus.
    #[arg(long, default_value_t = 1e-4)]
    eps_min: f64,
}

impl LiftArgs {
    fn options(&self) -> LiftOptions {
        LiftOptions { tol: self.tol, nodes: self.nodes, max_level: self.max_level, eps_min: self.eps_min }
    }
}

#[derive(Subcommand)]
enum LiftCmd {
    Eval {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value = "phi0")]
        kernel: String,
        #[command(flatten)]
        opts: LiftArgs,
    },
    /// Evaluates a lift along a path and writes t, values, error as CSV.
    Scan {
        #[arg(long)]
        geodesic: String,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long)]
        out: String,
        #[command(flatten)]
        opts: LiftArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Failure with its exit code: 1 for failed checks, 2 for invalid input or singular points.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: 2, kind: e.kind().into(), message: e.to_string() }
    }
}

type Out = std::result::Result<(), Failure>;

fn io_failure(path: &str, e: std::io::Error) -> Failure {
    Failure { code: 2, kind: "io".into(), message: format!("{path}: {e}") }
}

fn read_file(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load<T: for<'de> Deserialize<'de>>(path: &str) -> std::result::Result<T, Failure> {
    Ok(read_json(&read_file(path)?)?)
}

fn emit<T: Serialize>(v: &T) {
    println!("{}", to_json(v));
}

fn parse_pair<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<(T, T), Failure> {
    let bad = || Failure::from(Error::Parse(format!("{what} must be given as a,b, got {s}")));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn load_lattice(path: &str) -> std::result::Result<Lattice, Failure> {
    Ok(lattice_from_json(&load(path)?)?)
}

fn load_point(l: &Lattice, path: &Option<String>) -> std::result::Result<GrassmannPoint, Failure> {
    match path {
        Some(p) => Ok(point_from_json(l, &load(p)?)?),
        None => Ok(GrassmannPoint::base(l)),
    }
}

fn classic_weight(name: &str) -> std::result::Result<i64, Failure> {
    Ok(match name {
        "E4" => 4,
        "E6" => 6,
        "Delta" => 12,
        "j" | "j_minus_744" => 0,
        "E4sqE6_over_DeltaSq" => -10,
        _ => return Err(Error::UnknownSeries(name.into()).into()),
    })
}

fn run_lift(l: &Lattice, f: &thetalab::qseries::WeakMaassForm, z: &GrassmannPoint, kernel: &str, opts: &LiftOptions) -> thetalab::Result<LiftValue> {
    match kernel {
        "phi0" => lift::lift_phi0(l, f, z, opts),
        "psi" => lift::lift_psi(l, f, z, opts),
        other => Err(Error::Parse(format!("unknown lift kernel {other}; use phi0 or psi"))),
    }
}

/// A file path or an inline JSON object.
#[derive(Deserialize)]
#[serde(untagged)]
enum Source<T> {
    Path(String),
    Inline(T),
}

impl<T: for<'de> Deserialize<'de>> Source<T> {
    fn get(self) -> std::result::Result<T, Failure> {
        match self {
            Source::Path(p) => load(&p),
            Source::Inline(v) => Ok(v),
        }
    }
}

/// z1(t) = z1 + t dz1 with z2 fixed (U+U only).
#[derive(Deserialize)]
struct H2Path {
    z1: [f64; 2],
    z2: [f64; 2],
    dz1: [f64; 2],
}

/// The start point moved along exp(t X_{alpha mu}).
#[derive(Deserialize)]
struct FlowPath {
    #[serde(default)]
    start: Option<PointJson>,
    alpha: usize,
    mu: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeodesicSpec {
    lattice: Source<LatticeJson>,
    f: Source<FormJson>,
    #[serde(default = "default_kernel")]
    kernel: String,
    #[serde(default)]
    h2: Option<H2Path>,
    #[serde(default)]
    flow: Option<FlowPath>,
    t_min: f64,
    t_max: f64,
    /// Geometric rather than uniform spacing in t.
    #[serde(default)]
    log_spacing: bool,
}

fn default_kernel() -> String {
    "phi0".into()
}

fn scan(geodesic: &str, samples: usize, out: &str, opts: &LiftOptions) -> Out {
    let spec: GeodesicSpec = load(geodesic)?;
    let l = lattice_from_json(&spec.lattice.get()?)?;
    let f = form_from_json(&spec.f.get()?)?;
    if samples < 2 || !(spec.t_min < spec.t_max) || (spec.log_spacing && spec.t_min <= 0.0) {
        return Err(Error::Parse("need samples >= 2 and 0 < t_min < t_max for log spacing".into()).into());
    }
    let ts: Vec<f64> = (0..samples)
        .map(|i| {
            let s = i as f64 / (samples - 1) as f64;
            if spec.log_spacing {
                spec.t_min * (spec.t_max / spec.t_min).powf(s)
            } else {
                spec.t_min + s * (spec.t_max - spec.t_min)
            }
        })
        .collect();
    let point = |t: f64| -> thetalab::Result<GrassmannPoint> {
        match (&spec.h2, &spec.flow) {
            (Some(p), None) => GrassmannPoint::from_h2(
                Complex64::new(p.z1[0] + t * p.dz1[0], p.z1[1] + t * p.dz1[1]),
                Complex64::new(p.z2[0], p.z2[1]),
            ),
            (None, Some(p)) => {
                let z = match &p.start {
                    Some(s) => point_from_json(&l, s)?,
                    None => GrassmannPoint::base(&l),
                };
                if p.alpha < 1 || p.alpha > l.p || p.mu <= l.p || p.mu > l.rank() {
                    return Err(Error::Parse("flow indices out of range".into()));
                }
                Ok(z.flow(p.alpha, p.mu, t))
            }
            _ => Err(Error::Parse("give exactly one of h2 and flow".into())),
        }
    };
    let values: Vec<thetalab::Result<LiftValue>> = ts.par_iter().map(|&t| run_lift(&l, &f, &point(t)?, &spec.kernel, opts)).collect();
    let mut rows = Vec::new();
    for v in values {
        rows.push(v?);
    }
    let words: Vec<u32> = rows.iter().flat_map(|r| r.components.keys().copied()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let mut csv = String::from("t");
    for w in &words {
        if rows[0].kind == "scalar" {
            csv.push_str(",value");
        } else {
            csv.push_str(&format!(",value_{w}"));
        }
    }
    csv.push_str(",error\n");
    for (t, r) in ts.iter().zip(&rows) {
        csv.push_str(&format!("{t:e}"));
        for w in &words {
            csv.push_str(&format!(",{:e}", r.get(*w).re));
        }
        csv.push_str(&format!(",{:e}\n", r.error));
    }
    std::fs::write(out, csv).map_err(|e| io_failure(out, e))?;
    emit(&json!({"out": out, "samples": samples, "columns": words.len() + 2}));
    Ok(())
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Fqm { cmd: FqmCmd::Info { lattice } } => {
            let l = load_lattice(&lattice)?;
            let d = discriminant_group(&l)?;
            emit(&disc_report(&d));
        }
        Cmd::Fqm { cmd: FqmCmd::Weil { lattice, word, dual } } => {
            let l = load_lattice(&lattice)?;
            let w = WeilRep::new(&l, dual)?;
            let mw = MetaplecticWord::from_str_word(&word).ok_or_else(|| Error::Parse(format!("bad word {word}")))?;
            let m = w.element(&mw);
            let rows: Vec<Vec<ComplexJson>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect()).collect();
            emit(&json!({"word": word, "dual": dual, "labels": w.disc.elements, "matrix": rows}));
        }
        Cmd::Series { cmd: SeriesCmd::Classic { name, prec, dual } } => {
            let k = classic_weight(&name)?;
            let s = classic_series(&name, prec)?;
            let rep = WeilRep::new(&Lattice::hyperbolic(), dual)?;
            let v = VVSeries::from_scalar(&s, Rational64::from_integer(k), rep)?;
            emit(&series_to_json(&v));
        }
        Cmd::Pair { g, f, prime } => {
            let g = series_from_json(&load(&g)?)?;
            let mut f = form_from_json(&load(&f)?)?;
            // the trivial representation is its own dual
            if f.rep.disc.is_trivial() && g.rep.disc.is_trivial() && f.rep.dual == g.rep.dual {
                f.rep = f.rep.dualized();
            }
            let v = if prime { pairing_prime(&g, &f)? } else { pairing(&g, &f)? };
            let c: ComplexJson = v.to_c64().into();
            emit(&json!({"value": c, "exact": v.is_exact()}));
        }
        Cmd::Fock { cmd: FockCmd::Verify { sig, identity } } => {
            let (p, q) = parse_pair::<usize>(&sig, "sig")?;
            let names: Vec<&str> = if identity == "all" {
                thetalab::fock::IDENTITIES.iter().copied().filter(|n| q == 2 || !matches!(*n, "ddc" | "dcpsi")).collect()
            } else {
                vec![identity.as_str()]
            };
            let mut reports = Vec::new();
            for n in names {
                reports.push(fock_report(&thetalab::fock::verify_identity(n, p, q)?));
            }
            let all_pass = reports.iter().all(|r| r.pass);
            if reports.len() == 1 {
                emit(&reports[0]);
            } else {
                emit(&reports);
            }
            if !all_pass {
                return Err(Failure { code: 1, kind: "check_failed".into(), message: "an identity does not hold".into() });
            }
        }
        Cmd::Theta { cmd: ThetaCmd::Eval { lattice, phi, tau, point, tol } } => {
            let l = load_lattice(&lattice)?;
            let (re, im) = parse_pair::<f64>(&tau, "tau")?;
            let z = load_point(&l, &point)?;
            let v = theta::theta_eval(&l, &Kernel::parse(&phi)?, Complex64::new(re, im), &z, tol)?;
            emit(&v);
        }
        Cmd::Lift { cmd: LiftCmd::Eval { lattice, f, point, kernel, opts } } => {
            let l = load_lattice(&lattice)?;
            let f = form_from_json(&load(&f)?)?;
            let z = load_point(&l, &point)?;
            emit(&run_lift(&l, &f, &z, &kernel, &opts.options())?);
        }
        Cmd::Lift { cmd: LiftCmd::Scan { geodesic, samples, out, opts } } => scan(&geodesic, samples, &out, &opts.options())?,
        Cmd::Verify { level, out } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let reports = checks::run_suite(level);
            let mut stderr = std::io::stderr();
            for r in &reports {
                let _ = writeln!(stderr, "{r}");
            }
            let mut fock: Vec<FockReportJson> = Vec::new();
            for n in 2..=7usize {
                for q in 1..n {
                    for name in thetalab::fock::IDENTITIES {
                        if matches!(name, "ddc" | "dcpsi") && q != 2 {
                            continue;
                        }
                        fock.push(fock_report(&thetalab::fock::verify_identity(name, n - q, q)?));
                    }
                }
            }
            let doc = json!({
                "build": BUILD_ID,
                "level": match level { Level::Quick => "quick", Level::Full => "full" },
                "workers": rayon::current_num_threads(),
                "checks": reports,
                "fock_identities": fock,
            });
            let text = to_json(&doc);
            if let Some(path) = out {
                std::fs::write(&path, &text).map_err(|e| io_failure(&path, e))?;
            }
            println!("{text}");
            if reports.iter().any(|r| !r.pass) {
                let ids: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
                return Err(Failure { code: 1, kind: "check_failed".into(), message: format!("failing checks: {}", ids.join(", ")) });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("cannot set worker count: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let obj = json!({"error": {"kind": f.kind, "message": f.message, "exit_code": f.code}});
            println!("{}", to_json(&obj));
            ExitCode::from(f.code)
        }
    }
}
