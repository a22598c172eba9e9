//! `ratgrowth`: point counts, multiplicities, high-multiplicity loci,
//! valuation certificates, covers and experiment sweeps, all as JSON.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ratgrowth_core::algebra::{parse_poly, Field, PolyRing, PrimeField, PrimeIdealDesc, Rationals, Ring};
use ratgrowth_core::detmethod::{cover_pipeline, interp_det_certificate, CoverParams};
use ratgrowth_core::enumerate::{enum_curve_points_proj, Ambient, EnumOptions, Mode, PointQuery, QueryOutcome};
use ratgrowth_core::globalfield::{
    normalize_residue_point, reduce_point_mod_p, reduce_poly, FieldKind, FunctionField, GlobalField, RationalField,
};
use ratgrowth_core::harness::{baselines, parse_config, run_experiment};
use ratgrowth_core::reduction::{high_mult_locus, mult_at_point, HighMultLocus, LocusOptions, Point};

#[derive(Parser)]
#[command(name = "ratgrowth", version, about = "Rational points of bounded height and the determinant method")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count points of bounded height on a hypersurface
    Count(CountArgs),
    /// Multiplicity of a hypersurface at a point
    Mult(MultArgs),
    /// High-multiplicity locus of a reduced hypersurface and a form through it
    Highmult(HighMultArgs),
    /// Cover the points of a plane curve by auxiliary polynomials
    Cover(CoverArgs),
    /// Interpolation determinant certificate for one residue class
    Detcert(DetCertArgs),
    /// Run an experiment sweep from a JSON config
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    /// Count projective points; otherwise integral points in a box
    #[arg(long)]
    projective: bool,
    #[arg(long)]
    poly: String,
    #[arg(long)]
    height: u64,
    /// Number of variables, inferred from the polynomial when absent
    #[arg(long)]
    nvars: Option<usize>,
    #[arg(long)]
    collect: bool,
    /// Comma-separated sieve primes (integers over Q, polynomials in t over Fq(t))
    #[arg(long, value_delimiter = ',')]
    sieve: Option<Vec<String>>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct MultArgs {
    #[arg(long)]
    poly: String,
    /// Comma-separated coordinates; the number of coordinates fixes the number of variables
    #[arg(long)]
    point: String,
    /// Work over F_p instead of Q
    #[arg(long)]
    prime: Option<u64>,
    /// Treat the point as affine
    #[arg(long)]
    affine: bool,
}

#[derive(Args)]
struct HighMultArgs {
    #[arg(long)]
    poly: String,
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    k: f64,
    #[arg(long, conflicts_with = "nonstrict")]
    strict: bool,
    #[arg(long)]
    nonstrict: bool,
    #[arg(long, default_value_t = 64)]
    cap: u32,
    #[arg(long)]
    nvars: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    poly: String,
    #[arg(long)]
    height: u64,
    #[arg(long = "M", default_value_t = 4.0)]
    m: f64,
    #[arg(long = "N", default_value_t = 4.0)]
    n: f64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    budget: Option<u64>,
    /// Write the cover JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DetCertArgs {
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long)]
    poly: String,
    #[arg(long)]
    prime: String,
    /// Residue point, normalized so the first nonzero coordinate is 1
    #[arg(long)]
    residue: String,
    #[arg(long)]
    height: u64,
    /// Basis degree, `d - 1` by default
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, default_value_t = baselines::DET_A)]
    a: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

trait CliField: GlobalField {
    fn prime(&self, s: &str) -> Result<PrimeIdealDesc>;
}

impl CliField for RationalField {
    fn prime(&self, s: &str) -> Result<PrimeIdealDesc> {
        let p: u64 = s.trim().parse().with_context(|| format!("prime {s:?}"))?;
        Ok(PrimeIdealDesc::integer(p)?)
    }
}

impl CliField for FunctionField {
    fn prime(&self, s: &str) -> Result<PrimeIdealDesc> {
        let pi = self.parse_int(s.trim())?;
        Ok(PrimeIdealDesc::poly(self.ints(), &pi)?)
    }
}

macro_rules! with_field {
    ($desc:expr, |$k:ident| $body:expr) => {
        match $desc.parse::<FieldKind>()? {
            FieldKind::Rationals => {
                let $k = RationalField::new();
                $body
            }
            FieldKind::FunctionField(q) => {
                let $k = FunctionField::new(q)?;
                $body
            }
        }
    };
}

/// One more than the largest variable index mentioned in `text`.
fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut n = 0;
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let prev_alnum = i > 0 && b[i - 1].is_ascii_alphanumeric();
        if !prev_alnum && matches!(c, b'x' | b'y' | b'z' | b'w') {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let idx = if c == b'x' && j > i + 1 {
                text[i + 1..j].parse::<usize>().unwrap_or(0)
            } else {
                match c {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    _ => 3,
                }
            };
            n = n.max(idx + 1);
            i = j;
        } else {
            i += 1;
        }
    }
    n
}

fn split_coords(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|c| !c.is_empty()).collect()
}

fn count<K: CliField>(k: K, args: &CountArgs) -> Result<Value> {
    let nvars = args.nvars.unwrap_or_else(|| infer_nvars(&args.poly).max(if args.projective { 3 } else { 1 }));
    let ring = PolyRing::new(k.ints().clone(), nvars);
    let f = parse_poly(&ring, &args.poly)?;
    let sieve = match &args.sieve {
        Some(ps) => Some(ps.iter().map(|p| k.prime(p)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    let mode = if args.collect { Mode::Collect } else { Mode::CountOnly };
    let options = EnumOptions { mode, sieve, budget: args.budget };
    let ambient = if args.projective { Ambient::Projective(nvars - 1) } else { Ambient::Affine(nvars) };
    let query = PointQuery { field: k.clone(), ambient, f: Some(f), bound: args.height, options };
    let fmt = |cs: &[<K::Ints as Ring>::Elem]| cs.iter().map(|c| k.fmt_int(c)).collect::<Vec<_>>();
    let (count, elapsed, points) = match query.run()? {
        QueryOutcome::Projective(r) => {
            (r.count, r.elapsed, r.points.map(|ps| ps.iter().map(|p| fmt(&p.coords)).collect::<Vec<_>>()))
        }
        QueryOutcome::Affine(r) => (r.count, r.elapsed, r.points.map(|ps| ps.iter().map(|p| fmt(p)).collect())),
    };
    let mut out = json!({ "count": count, "elapsed_ms": elapsed.as_millis() as u64 });
    if let Some(ps) = points {
        out["points"] = json!(ps);
    }
    Ok(out)
}

fn mult_over<F: Field>(base: F, args: &MultArgs) -> Result<Value> {
    let coords = split_coords(&args.point);
    let ring = PolyRing::new(base.clone(), coords.len());
    let f = parse_poly(&ring, &args.poly)?;
    let scalar = PolyRing::new(base.clone(), 0);
    let pt = coords
        .iter()
        .map(|c| {
            let p = parse_poly(&scalar, c)?;
            Ok(p.leading().map_or_else(|| base.zero(), |(_, c)| c.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let point = if args.affine { Point::Affine(pt) } else { Point::Projective(pt) };
    let rep = mult_at_point(&ring, &f, &point)?;
    Ok(json!({
        "mu": rep.mu,
        "point": rep.point.iter().map(|c| base.fmt_elem(c)).collect::<Vec<_>>(),
        "projective": !args.affine,
    }))
}

fn highmult(args: &HighMultArgs) -> Result<Value> {
    let fp = PrimeField::new(args.prime)?;
    let nvars = args.nvars.unwrap_or_else(|| infer_nvars(&args.poly).max(3));
    let ring = PolyRing::new(fp, nvars);
    let f = parse_poly(&ring, &args.poly)?;
    let mut opts = LocusOptions { strict: !args.nonstrict, cap_degree: args.cap, ..LocusOptions::default() };
    if args.budget.is_some() {
        opts.budget = args.budget;
    }
    let fmt_pts = |ps: &[Vec<u64>]| ps.iter().map(|p| p.iter().map(u64::to_string).collect::<Vec<_>>()).collect::<Vec<_>>();
    Ok(match high_mult_locus(&ring, &f, args.k, &opts)? {
        HighMultLocus::AllPoints => json!({ "all_points": true, "locus_points": Value::Null, "degree": Value::Null, "poly": Value::Null }),
        HighMultLocus::EmptyLocus => json!({ "all_points": false, "locus_points": [], "degree": Value::Null, "poly": Value::Null }),
        HighMultLocus::Interpolant { poly, degree, locus } => json!({
            "all_points": false,
            "locus_points": fmt_pts(&locus),
            "degree": degree,
            "poly": ring.fmt_elem(&poly),
        }),
    })
}

fn cover<K: GlobalField>(k: K, args: &CoverArgs) -> Result<Value> {
    let ring = PolyRing::new(k.ints().clone(), 3);
    let f = parse_poly(&ring, &args.poly)?;
    let mut params = CoverParams { m: args.m, n: args.n, a: args.a, ..CoverParams::default() };
    if args.budget.is_some() {
        params.budget = args.budget;
    }
    let res = cover_pipeline(&k, &f, args.height, &params)?;
    Ok(res.to_json(&k))
}

fn detcert<K: CliField>(k: K, args: &DetCertArgs) -> Result<Value> {
    let ring = PolyRing::new(k.ints().clone(), 3);
    let f = parse_poly(&ring, &args.poly)?;
    let d = f.degree();
    if d < 1 {
        bail!("the curve must be nonconstant");
    }
    let p = k.prime(&args.prime)?;
    let res = k.residue_field(&p)?;
    let wanted: Vec<String> = split_coords(&args.residue).into_iter().map(String::from).collect();
    let pts = enum_curve_points_proj(&k, &f, args.height, &EnumOptions::collect())?.points.expect("collected");
    let mut class = Vec::new();
    for q in pts {
        let r = normalize_residue_point(&res, &reduce_point_mod_p(&k, &q, &p)?)?;
        if r.iter().map(|c| res.fmt_elem(c)).collect::<Vec<_>>() == wanted {
            class.push(q);
        }
    }
    let degree = args.degree.unwrap_or(d - 1);
    let s = ratgrowth_core::detmethod::monomial_basis(3, degree).size();
    if class.len() < s {
        bail!("residue class has {} points of height <= {}, the basis needs {s}", class.len(), args.height);
    }
    class.truncate(s);
    let rp = PolyRing::new(res.clone(), 3);
    let fp = reduce_poly(&k, &res, &ring.primitive_part(&f));
    let residue = normalize_residue_point(&res, &reduce_point_mod_p(&k, &class[0], &p)?)?;
    let mu = ratgrowth_core::reduction::mult_proj(&rp, &fp, &residue)?;
    let cert = interp_det_certificate(&k, &class, degree, &p, mu, args.a, None)?;
    Ok(serde_json::to_value(cert)?)
}

fn experiment(args: &ExperimentArgs) -> Result<Value> {
    let text = fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = parse_config(&text)?;
    let (report, info) = run_experiment(&cfg)?;
    fs::write(&args.out, report.to_csv()?).with_context(|| format!("writing {}", args.out.display()))?;
    Ok(json!({
        "rows": report.rows.len(),
        "out": args.out.display().to_string(),
        "fits": report.fits,
        "seed": info.seed,
        "threads": info.threads,
        "elapsed_ms": info.elapsed_ms,
    }))
}

fn run(cli: Cli) -> Result<Value> {
    match cli.cmd {
        Cmd::Count(a) => with_field!(a.field, |k| count(k, &a)),
        Cmd::Mult(a) => match a.prime {
            Some(p) => mult_over(PrimeField::new(p)?, &a),
            None => mult_over(Rationals, &a),
        },
        Cmd::Highmult(a) => highmult(&a),
        Cmd::Cover(a) => {
            let v = with_field!(a.field, |k| cover(k, &a))?;
            if let Some(path) = &a.out {
                fs::write(path, serde_json::to_string_pretty(&v)?).with_context(|| format!("writing {}", path.display()))?;
                return Ok(json!({ "out": path.display().to_string(), "counts": v["counts"] }));
            }
            Ok(v)
        }
        Cmd::Detcert(a) => with_field!(a.field, |k| detcert(k, &a)),
        Cmd::Experiment(a) => experiment(&a),
    }
}

fn main() {
    match run(Cli::parse()) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            let _ = writeln!(io::stdout().lock(), "{text}");
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
