//! `latpoly` command-line tool.
//!
//! Exit codes: 0 success (or a query answered), 2 input error, 3 a
//! verification failed, 4 unsupported input (origin not interior, non
//! integral dual, ambiguous matrix orientation). `LATPOLY_WORKERS` caps
//! the number of worker threads.

mod input;
mod verify;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latpoly::constructions::{
    bipyramid, gamma, gamma_delta_formula, nill_bounds_check, prism01, prism_delta_formula,
    prism_sym, pyramid, pyramid_delta_formula, sylvester, sylvester_simplex,
    sylvester_simplex_dual_map, sylvester_volume,
};
use latpoly::ehrhart::{
    check_delta_properties, delta_vector, delta_vector_auto, EhrhartPolynomial,
};
use latpoly::equivalence::{
    apply_map, are_equivalent, classify_self_duality, delta_self_dual, enumerate_reflexive_2d,
};
use latpoly::ks_io::write_native;
use latpoly::{Error, Polytope};
use rayon::prelude::*;
use serde_json::{json, Value};

use input::InputArgs;

#[derive(Debug, Parser)]
#[command(
    name = "latpoly",
    version,
    about = "Exact lattice polytope computations"
)]
struct Cli {
    /// Emit one JSON document instead of the text report.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Gamma,
    PrismSym,
    Bipyramid,
    Prism01,
    Pyramid,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// δ-vector, Ehrhart polynomial, volume and reflexivity.
    Delta {
        #[command(flatten)]
        input: InputArgs,
        /// Also check the standard δ-vector properties.
        #[arg(long)]
        check: bool,
    },
    /// Polar dual, in native format.
    Dual {
        #[command(flatten)]
        input: InputArgs,
        /// Also check reflexivity and that the double dual is the input.
        #[arg(long)]
        verify: bool,
    },
    /// One of the constructions one dimension up, in native format.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        input: InputArgs,
        /// Also compare the counted δ-vector with its closed form.
        #[arg(long)]
        verify: bool,
    },
    /// Decide unimodular equivalence of two polytopes.
    Equiv {
        #[command(flatten)]
        input: InputArgs,
        /// Compare the single input with its polar dual.
        #[arg(long)]
        dual: bool,
    },
    /// The self-dual reflexive simplex built from the Sylvester sequence.
    Sylvester {
        /// Dimension, at least 3.
        #[arg(long)]
        dim: usize,
        /// Check self-duality, the volume formula and the volume bounds.
        #[arg(long)]
        verify: bool,
    },
    /// Census of a file of polytopes: reflexive and δ-self-dual counts.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        /// Also decide P ≅ P^∨ for every reflexive record.
        #[arg(long)]
        equivalence: bool,
    },
    /// The reflexive polygons up to unimodular equivalence, in native format.
    #[command(name = "enumerate-2d")]
    Enumerate2d,
    /// Run every reproducible claim and print a PASS / FAIL table.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// Kreuzer–Skarke dimension-3 file for the 3D census row.
        #[arg(long)]
        ks3: Option<std::path::PathBuf>,
        /// Skip the 2D census and the polygons in the shared corpus.
        #[arg(long)]
        skip_enum2d: bool,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        CliError {
            code: 4,
            msg: msg.into(),
        }
    }

    pub fn from_core(e: Error) -> Self {
        let code = match e {
            Error::OriginNotInterior
            | Error::NotIntegral { .. }
            | Error::NotReflexive
            | Error::NotASimplex { .. } => 4,
            Error::Internal(_) => 3,
            _ => 2,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }

    pub fn context(self, msg: String) -> Self {
        CliError {
            code: self.code,
            msg: format!("{msg} ({})", self.msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

/// Text lines, the same report as JSON, and whether a check failed.
pub struct Report {
    text: Vec<String>,
    json: Value,
    failed: bool,
}

impl Report {
    fn new(json: Value) -> Self {
        Report {
            text: Vec::new(),
            json,
            failed: false,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// A `# name: PASS|FAIL` line, also recorded under `checks` in JSON.
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let tag = if passed { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            self.line(format!("# {name}: {tag}"));
        } else {
            self.line(format!("# {name}: {tag} ({detail})"));
        }
        self.failed |= !passed;
        let entry = json!({ "name": name, "passed": passed, "detail": detail });
        match self.json.get_mut("checks").and_then(Value::as_array_mut) {
            Some(a) => a.push(entry),
            None => self.json["checks"] = json!([entry]),
        }
    }
}

fn polytope_json(p: &Polytope) -> Value {
    let verts: Vec<Vec<String>> = p
        .vertices()
        .iter()
        .map(|v| v.coords().iter().map(|c| c.to_string()).collect())
        .collect();
    json!({ "dim": p.dim(), "vertices": verts, "native": write_native(p) })
}

fn cmd_delta(input: &InputArgs, check: bool) -> Result<Report, CliError> {
    let p = input.load_one()?;
    let delta = delta_vector_auto(&p)?;
    let poly = EhrhartPolynomial::from_delta(&delta);
    let d = p.dim();
    let lattice = delta.get(1) + latpoly::BigInt::from(d + 1);
    let interior = delta.get(d as isize);
    let mut r = Report::new(json!({
        "dim": d,
        "vertices": p.num_vertices(),
        "facets": p.num_facets(),
        "delta": delta.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "ehrhart": poly.to_string(),
        "volume": delta.sum().to_string(),
        "lattice_points": lattice.to_string(),
        "interior_points": interior.to_string(),
        "reflexive": p.is_reflexive(),
    }));
    r.line(format!("dim: {d}"));
    r.line(format!("vertices: {}", p.num_vertices()));
    r.line(format!("facets: {}", p.num_facets()));
    r.line(format!("delta: {delta}"));
    r.line(format!("ehrhart: {poly}"));
    r.line(format!("volume: {}", delta.sum()));
    r.line(format!("lattice-points: {lattice}"));
    r.line(format!("interior-points: {interior}"));
    r.line(format!("reflexive: {}", p.is_reflexive()));
    if check {
        let report = check_delta_properties(&p)?;
        for c in &report.checks {
            r.check(c.name, c.passed, c.detail.clone());
        }
    }
    Ok(r)
}

fn cmd_dual(input: &InputArgs, verify: bool) -> Result<Report, CliError> {
    let p = input.load_one()?;
    let dual = p.polar_dual()?;
    let mut r = Report::new(polytope_json(&dual));
    r.line(write_native(&dual));
    if verify {
        r.check(
            "dual-is-reflexive",
            dual.is_reflexive() == p.is_reflexive(),
            "",
        );
        let back = dual.polar_dual().map(|b| b == p).unwrap_or(false);
        r.check("double-dual-is-input", back, "");
    }
    Ok(r)
}

fn construct(kind: Kind, p: &Polytope) -> Polytope {
    match kind {
        Kind::Gamma => gamma(p),
        Kind::PrismSym => prism_sym(p),
        Kind::Bipyramid => bipyramid(p),
        Kind::Prism01 => prism01(p),
        Kind::Pyramid => pyramid(p),
    }
}

fn cmd_construct(kind: Kind, input: &InputArgs, verify: bool) -> Result<Report, CliError> {
    let p = input.load_one()?;
    let q = construct(kind, &p);
    let mut r = Report::new(polytope_json(&q));
    r.line(write_native(&q));
    if !verify {
        return Ok(r);
    }
    let base = delta_vector(&p)?;
    let counted = delta_vector(&q)?;
    let formula = match kind {
        Kind::Gamma if p.origin_is_interior() => Some(gamma_delta_formula(&base)?),
        Kind::Prism01 => Some(prism_delta_formula(&base)?),
        Kind::Pyramid => Some(pyramid_delta_formula(&base)),
        _ => None,
    };
    if let Some(f) = formula {
        r.check(
            "delta-formula",
            f == counted,
            format!("counted {counted}, formula {f}"),
        );
    }
    if p.is_reflexive() {
        match kind {
            Kind::Gamma | Kind::PrismSym | Kind::Bipyramid => {
                r.check("reflexive", q.is_reflexive(), "");
                let pd = p.polar_dual()?;
                let qd = q.polar_dual()?;
                match kind {
                    Kind::Gamma => {
                        let ok = are_equivalent(&gamma(&pd), &qd)?.is_some();
                        r.check("gamma-of-dual-equivalent-to-dual", ok, "");
                    }
                    Kind::PrismSym => {
                        r.check("dual-is-bipyramid-of-dual", qd == bipyramid(&pd), "")
                    }
                    _ => r.check("dual-is-prism-of-dual", qd == prism_sym(&pd), ""),
                }
            }
            _ => {}
        }
    }
    Ok(r)
}

fn cmd_equiv(input: &InputArgs, dual: bool) -> Result<Report, CliError> {
    let (p, q) = if dual {
        let p = input.load_one()?;
        let d = p.polar_dual()?;
        (p, d)
    } else {
        let mut all = input.load_all()?;
        if all.len() != 2 {
            return Err(CliError::input(format!(
                "expected two polytopes, got {}",
                all.len()
            )));
        }
        let q = all.pop().expect("two");
        (all.pop().expect("two"), q)
    };
    if p.dim() != q.dim() {
        return Err(CliError::input(format!(
            "dimensions differ: {} and {}",
            p.dim(),
            q.dim()
        )));
    }
    let found = are_equivalent(&p, &q)?;
    let mut r = Report::new(json!({ "equivalent": found.is_some() }));
    match found {
        Some(m) => {
            r.line("equivalent");
            for l in m.to_string().lines() {
                r.line(l);
            }
            let rows: Vec<Vec<String>> = (0..m.dim())
                .map(|i| m.matrix().row(i).iter().map(|x| x.to_string()).collect())
                .collect();
            r.json["matrix"] = json!(rows);
            r.json["translation"] = json!(m
                .translation()
                .coords()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>());
        }
        None => r.line("inequivalent"),
    }
    Ok(r)
}

fn cmd_sylvester(d: usize, verify: bool) -> Result<Report, CliError> {
    let s = sylvester_simplex(d)?;
    let mut r = Report::new(polytope_json(&s));
    r.line(write_native(&s));
    if !verify {
        return Ok(r);
    }
    r.check("reflexive", s.is_reflexive(), "");
    let dual = s.polar_dual()?;
    let searched = are_equivalent(&dual, &s)?.is_some();
    r.check("self-dual-by-search", searched, "");
    let u = sylvester_simplex_dual_map(d)?;
    r.check("self-dual-by-explicit-map", apply_map(&u, &dual)? == s, "");
    let vol = s.normalized_volume()?;
    let expect = sylvester_volume(d)?;
    let product = match d {
        3 => String::new(),
        4 => " * b_0".to_string(),
        _ => format!(" * b_0...b_{}", d - 4),
    };
    r.check(
        "volume",
        vol == expect,
        format!("{vol} = 2^{}{product}", d + 1),
    );
    let bound = sylvester(d) - latpoly::BigInt::from(1);
    r.check(
        "volume-below-b_d-1",
        vol < bound,
        format!("{vol} < {bound}"),
    );
    let nb = nill_bounds_check(&s)?;
    r.check(
        "nill-lower-bound",
        nb.lower_holds(),
        format!("{} <= {}", nb.lower, nb.product),
    );
    r.check(
        "nill-upper-bound",
        nb.upper_holds(),
        format!("{} <= {}", nb.product, nb.upper),
    );
    Ok(r)
}

struct ScanRow {
    dim: usize,
    vertices: usize,
    reflexive: bool,
    delta_self_dual: Option<bool>,
    self_equivalent: Option<bool>,
}

fn scan_one(p: &Polytope, equivalence: bool) -> Result<ScanRow, Error> {
    let reflexive = p.is_reflexive();
    let (delta_self_dual, self_equivalent) = match (reflexive, equivalence) {
        (false, _) => (None, None),
        (true, false) => (Some(delta_self_dual(p)?), None),
        (true, true) => {
            let c = classify_self_duality(p)?;
            (Some(c.delta_equal), Some(c.equivalent))
        }
    };
    Ok(ScanRow {
        dim: p.dim(),
        vertices: p.num_vertices(),
        reflexive,
        delta_self_dual,
        self_equivalent,
    })
}

fn cmd_scan(input: &InputArgs, equivalence: bool) -> Result<Report, CliError> {
    const CHUNK: usize = 256;
    let mut rows = Vec::new();
    let mut scan_batch = |batch: &mut Vec<Polytope>| -> Result<(), CliError> {
        let done: Vec<_> = batch.par_iter().map(|p| scan_one(p, equivalence)).collect();
        for row in done {
            rows.push(row?);
        }
        batch.clear();
        Ok(())
    };
    let mut batch = Vec::with_capacity(CHUNK);
    for path in &input.file {
        for p in input.reader(path)? {
            batch.push(p.map_err(|e| input::parse_error(path, e))?);
            if batch.len() == CHUNK {
                scan_batch(&mut batch)?;
            }
        }
    }
    for name in &input.fixture {
        batch.push(
            latpoly::fixture(name)
                .ok_or_else(|| CliError::input(format!("unknown fixture {name:?}")))?,
        );
    }
    scan_batch(&mut batch)?;

    let flag = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    let total = rows.len();
    let reflexive = rows.iter().filter(|r| r.reflexive).count();
    let dsd = rows
        .iter()
        .filter(|r| r.delta_self_dual == Some(true))
        .count();
    let seq = rows
        .iter()
        .filter(|r| r.self_equivalent == Some(true))
        .count();
    let mut r = Report::new(json!({
        "total": total,
        "reflexive": reflexive,
        "delta_self_dual": dsd,
    }));
    let mut details = Vec::with_capacity(total);
    for (i, row) in rows.iter().enumerate() {
        let mut l = format!(
            "record {i}: dim {}, vertices {}, reflexive {}, delta-self-dual {}",
            row.dim,
            row.vertices,
            row.reflexive,
            flag(row.delta_self_dual)
        );
        if equivalence {
            l.push_str(&format!(", self-equivalent {}", flag(row.self_equivalent)));
        }
        r.line(l);
        details.push(json!({
            "dim": row.dim,
            "vertices": row.vertices,
            "reflexive": row.reflexive,
            "delta_self_dual": row.delta_self_dual,
            "self_equivalent": row.self_equivalent,
        }));
    }
    r.json["records"] = json!(details);
    let mut summary = format!("total {total}, delta-self-dual {dsd}, reflexive {reflexive}");
    if equivalence {
        summary.push_str(&format!(", self-equivalent {seq}"));
        r.json["self_equivalent"] = json!(seq);
    }
    r.line(summary);
    Ok(r)
}

fn cmd_enumerate_2d() -> Result<Report, CliError> {
    let reps = enumerate_reflexive_2d();
    let mut r =
        Report::new(json!({ "polygons": reps.iter().map(polytope_json).collect::<Vec<_>>() }));
    for p in &reps {
        r.line(write_native(p));
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Delta { input, check } => cmd_delta(input, *check),
        Command::Dual { input, verify } => cmd_dual(input, *verify),
        Command::Construct {
            kind,
            input,
            verify,
        } => cmd_construct(*kind, input, *verify),
        Command::Equiv { input, dual } => cmd_equiv(input, *dual),
        Command::Sylvester { dim, verify } => cmd_sylvester(*dim, *verify),
        Command::Scan { input, equivalence } => cmd_scan(input, *equivalence),
        Command::Enumerate2d => cmd_enumerate_2d(),
        Command::VerifyPaper { ks3, skip_enum2d } => Ok(verify::run(ks3.as_deref(), *skip_enum2d)),
    }
}

fn init_workers() {
    let Some(n) = std::env::var("LATPOLY_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    else {
        return;
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
    {
        log::warn!("could not size the worker pool: {e}");
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    init_workers();
    match run(&cli) {
        Ok(r) => {
            if cli.machine {
                println!("{}", r.json);
            } else {
                for l in &r.text {
                    println!("{l}");
                }
            }
            if r.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.machine {
                println!("{}", json!({ "error": e.msg, "exit_code": e.code }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
