use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{aux_poly_for_points, monomial_basis, regime_check, residue_of, RegimeRecord, RegimeVariant};
use crate::algebra::{FiniteField, MultiPoly, PolyRing, PrimeIdealDesc, Ring};
use crate::enumerate::{enum_affine_hypersurface, enum_curve_points_proj, EnumOptions};
use crate::error::{Error, Result};
use crate::globalfield::{reduce_poly, FieldKind, GlobalField, ProjPoint};
use crate::reduction::mult_proj;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CoverParams {
    /// Primes are taken in `(log H, M (log H)^ell)`.
    pub m: f64,
    /// `d' = floor(N log H)` for curves.
    pub n: f64,
    pub a: f64,
    /// Constant and exponent of the reported `c (log H)^kappa`.
    pub c: f64,
    pub kappa: u32,
    /// Affine low-multiplicity threshold `d / (log H)^alpha`.
    pub alpha: f64,
    /// Affine `d' = floor((log H)^C)`.
    pub c_exp: f64,
    pub ell: f64,
    pub budget: Option<u64>,
    /// Overrides the prime range.
    pub primes: Option<Vec<PrimeIdealDesc>>,
}

impl Default for CoverParams {
    fn default() -> Self {
        CoverParams {
            m: 4.0,
            n: 4.0,
            a: 1.0,
            c: 1.0,
            kappa: 12,
            alpha: 1.0,
            c_exp: 1.0,
            ell: 4.0,
            budget: Some(50_000_000),
            primes: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    /// Points of multiplicity below the threshold at this prime.
    LowMultClass,
    /// Points that stayed high-multiplicity at every prime, covered by one
    /// residue class at the largest prime because the global capture was
    /// refused or failed.
    FallbackClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassRecord<E> {
    pub prime: PrimeIdealDesc,
    pub point: Vec<String>,
    pub mu: u32,
    pub poly: MultiPoly<E>,
    /// Indices into `CoverResult::points`.
    pub members: Vec<usize>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighMultAudit {
    /// `sum log N(p_i)` over the chosen primes.
    pub log_prime_product: f64,
    /// `s' log s' + s' d' d_K log H` for the degree-`d'` determinant.
    pub log_det_cap: f64,
    pub forced_vanishing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HighMultCover<E> {
    pub members: Vec<usize>,
    /// `None` for an empty set, or when no form of degree `d'` exists.
    pub poly: Option<MultiPoly<E>>,
    pub degree: u32,
    pub empty: bool,
    pub audit: HighMultAudit,
}

#[derive(Clone, Debug)]
pub struct CoverResult<E> {
    pub curve: MultiPoly<E>,
    pub h: u64,
    pub d: u32,
    pub regime: RegimeRecord,
    pub points: Vec<ProjPoint<E>>,
    pub classes: Vec<ClassRecord<E>>,
    pub high_mult: Option<HighMultCover<E>>,
    /// Why the global capture of the high-multiplicity set was not used.
    pub high_mult_refused: Option<String>,
    pub uncovered: Vec<ProjPoint<E>>,
    pub primes: Vec<PrimeIdealDesc>,
    /// `c (log H)^kappa`.
    pub polys_count_bound: f64,
    pub elapsed: Duration,
}

impl<E: Clone> CoverResult<E> {
    pub fn aux_polys(&self) -> Vec<&MultiPoly<E>> {
        let mut out: Vec<_> = self.classes.iter().map(|c| &c.poly).collect();
        if let Some(p) = self.high_mult.as_ref().and_then(|h| h.poly.as_ref()) {
            out.push(p);
        }
        out
    }

    pub fn aux_count(&self) -> usize {
        self.aux_polys().len()
    }

    pub fn to_json<K: GlobalField<Ints = R>, R: Ring<Elem = E>>(&self, k: &K) -> serde_json::Value {
        let pr = PolyRing::new(k.ints().clone(), self.curve.nvars());
        let fmt_pt = |p: &ProjPoint<E>| p.coords.iter().map(|c| k.fmt_int(c)).collect::<Vec<_>>();
        let classes: Vec<_> = self
            .classes
            .iter()
            .map(|c| {
                json!({
                    "prime": c.prime.label(),
                    "point": c.point,
                    "mu": c.mu,
                    "aux_poly": pr.fmt_elem(&c.poly),
                    "class_size": c.members.len(),
                    "provenance": c.provenance,
                })
            })
            .collect();
        let high = self.high_mult.as_ref().map(|h| {
            json!({
                "poly": h.poly.as_ref().map(|p| pr.fmt_elem(p)),
                "degree": h.degree,
                "set_size": h.members.len(),
                "audit": h.audit,
            })
        });
        json!({
            "curve": pr.fmt_elem(&self.curve),
            "H": self.h,
            "regime": self.regime,
            "classes": classes,
            "high_mult": high,
            "high_mult_refused": self.high_mult_refused,
            "uncovered": self.uncovered.iter().map(fmt_pt).collect::<Vec<_>>(),
            "counts": {
                "points": self.points.len(),
                "aux": self.aux_count(),
                "bound_rhs": self.polys_count_bound,
            },
            "primes": self.primes.len(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

struct PrimeCtx<F: FiniteField> {
    desc: PrimeIdealDesc,
    res: F,
    ring: PolyRing<F>,
    f_p: MultiPoly<F::Elem>,
}

fn prime_contexts<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    primes: &[PrimeIdealDesc],
) -> Result<Vec<PrimeCtx<K::Residue>>> {
    let prim = PolyRing::new(k.ints().clone(), f.nvars()).primitive_part(f);
    primes
        .iter()
        .map(|p| {
            let res = k.residue_field(p)?;
            let f_p = reduce_poly(k, &res, &prim);
            Ok(PrimeCtx { desc: p.clone(), ring: PolyRing::new(res.clone(), f.nvars()), res, f_p })
        })
        .collect()
}

fn log_prime_product(primes: &[PrimeIdealDesc]) -> f64 {
    primes.iter().map(|p| (p.norm as f64).ln()).sum()
}

fn audit<K: GlobalField>(k: &K, nvars: usize, d_prime: u32, log_h: f64, primes: &[PrimeIdealDesc]) -> HighMultAudit {
    let s = monomial_basis(nvars, d_prime).size() as f64;
    let log_det_cap = s * s.ln() + s * d_prime as f64 * k.d_k() as f64 * log_h;
    let lp = log_prime_product(primes);
    HighMultAudit { log_prime_product: lp, log_det_cap, forced_vanishing: lp > log_det_cap }
}

/// A form of degree `d'` through the given points, which should be those
/// reducing to high-multiplicity points modulo every chosen prime.
fn capture<K: GlobalField>(
    k: &K,
    points: &[ProjPoint<<K::Ints as Ring>::Elem>],
    members: Vec<usize>,
    nvars: usize,
    d_prime: u32,
    log_h: f64,
    primes: &[PrimeIdealDesc],
) -> Result<HighMultCover<<K::Ints as Ring>::Elem>> {
    let audit = audit(k, nvars, d_prime, log_h, primes);
    if members.is_empty() {
        return Ok(HighMultCover { members, poly: None, degree: d_prime, empty: true, audit });
    }
    let pts: Vec<_> = members.iter().map(|&i| points[i].clone()).collect();
    let aux = aux_poly_for_points(k, nvars, d_prime, &pts)?;
    Ok(HighMultCover { members, poly: aux.poly, degree: d_prime, empty: false, audit })
}

/// Enumerates `C(K, H)`, selects the points of multiplicity at least
/// `d / log H` modulo every prime, and interpolates them in degree
/// `d' = floor(N log H)`. Refuses when `d' >= d`.
pub fn cover_high_mult<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
    primes: Option<&[PrimeIdealDesc]>,
    n_const: f64,
    m_const: f64,
) -> Result<(Vec<ProjPoint<<K::Ints as Ring>::Elem>>, HighMultCover<<K::Ints as Ring>::Elem>)> {
    let d = f.degree();
    let log_h = (h as f64).ln();
    let d_prime = (n_const * log_h).floor() as u32;
    if d_prime >= d {
        return Err(Error::RegimeViolation(format!("d' = {d_prime} is not below d = {d}")));
    }
    let primes = match primes {
        Some(p) => p.to_vec(),
        None => k.prime_ideals(log_h, m_const * log_h.powi(4))?,
    };
    let pts = enum_curve_points_proj(k, f, h, &EnumOptions::collect())?.points.expect("collected");
    let ctxs = prime_contexts(k, f, &primes)?;
    let t = d as f64 / log_h;
    let mut members = Vec::new();
    for (i, q) in pts.iter().enumerate() {
        let mut high = true;
        for c in &ctxs {
            let rp = residue_of(k, &c.res, &c.desc, q)?;
            if (mult_proj(&c.ring, &c.f_p, &rp)? as f64) < t {
                high = false;
                break;
            }
        }
        if high {
            members.push(i);
        }
    }
    let cover = capture(k, &pts, members, f.nvars(), d_prime, log_h, &primes)?;
    Ok((pts, cover))
}

enum Assignment {
    Low { prime: usize, residue: Vec<u64>, mu: u32 },
    High,
}

struct CoreInput<'a, E> {
    curve: &'a MultiPoly<E>,
    h: u64,
    d: u32,
    log_h: f64,
    low_threshold: f64,
    d_prime: u32,
    regime: RegimeRecord,
    primes: Vec<PrimeIdealDesc>,
}

fn cover_core<K: GlobalField>(
    k: &K,
    inp: CoreInput<'_, <K::Ints as Ring>::Elem>,
    points: Vec<ProjPoint<<K::Ints as Ring>::Elem>>,
    params: &CoverParams,
    start: Instant,
) -> Result<CoverResult<<K::Ints as Ring>::Elem>> {
    let f = inp.curve;
    let nvars = f.nvars();
    let ctxs = prime_contexts(k, f, &inp.primes)?;
    if ctxs.is_empty() && !points.is_empty() {
        return Err(Error::Precondition("no primes in range".into()));
    }
    let residue_key = |c: &PrimeCtx<K::Residue>, q: &ProjPoint<_>| -> Result<(Vec<_>, Vec<u64>)> {
        let rp = residue_of(k, &c.res, &c.desc, q)?;
        let idx = rp.iter().map(|x| c.res.index_of(x)).collect();
        Ok((rp, idx))
    };
    let assignments: Vec<Assignment> = points
        .par_iter()
        .map(|q| {
            for (pi, c) in ctxs.iter().enumerate() {
                let (rp, residue) = residue_key(c, q)?;
                let mu = mult_proj(&c.ring, &c.f_p, &rp)?;
                if (mu as f64) < inp.low_threshold {
                    return Ok(Assignment::Low { prime: pi, residue, mu });
                }
            }
            Ok(Assignment::High)
        })
        .collect::<Result<_>>()?;

    let mut groups: BTreeMap<(usize, Vec<u64>, Provenance), (u32, Vec<usize>)> = BTreeMap::new();
    let mut high = Vec::new();
    for (i, a) in assignments.into_iter().enumerate() {
        match a {
            Assignment::Low { prime, residue, mu } => {
                groups.entry((prime, residue, Provenance::LowMultClass)).or_insert((mu, Vec::new())).1.push(i)
            }
            Assignment::High => high.push(i),
        }
    }

    let mut refused = None;
    let mut high_mult = None;
    if !high.is_empty() {
        if inp.d_prime >= inp.d {
            refused = Some(format!("d' = {} is not below d = {}", inp.d_prime, inp.d));
        } else {
            let cap = capture(k, &points, high.clone(), nvars, inp.d_prime, inp.log_h, &inp.primes)?;
            if cap.poly.is_none() {
                refused = Some(format!("no form of degree {} through the {} points", inp.d_prime, high.len()));
            }
            high_mult = Some(cap);
        }
    }
    if refused.is_some() {
        let last = ctxs.len() - 1;
        let c = &ctxs[last];
        for &i in &high {
            let (rp, residue) = residue_key(c, &points[i])?;
            let mu = mult_proj(&c.ring, &c.f_p, &rp)?;
            groups.entry((last, residue, Provenance::FallbackClass)).or_insert((mu, Vec::new())).1.push(i);
        }
        if high_mult.as_ref().is_some_and(|h| h.poly.is_none()) {
            high_mult = None;
        }
    }

    let aux_degree = inp.d - 1;
    let classes: Vec<ClassRecord<_>> = groups
        .into_par_iter()
        .map(|((pi, residue, provenance), (mu, members))| {
            let c = &ctxs[pi];
            let pts: Vec<_> = members.iter().map(|&i| points[i].clone()).collect();
            let aux = aux_poly_for_points(k, nvars, aux_degree, &pts)?;
            let label: Vec<String> = residue.iter().map(|&x| c.res.fmt_elem(&c.res.elem_at(x))).collect();
            let poly = aux.poly.ok_or_else(|| {
                Error::IrrecoverableClass(format!(
                    "{} points over ({}) modulo {} with mu = {mu}: evaluation rank {} = s",
                    members.len(),
                    label.join(" : "),
                    c.desc.label(),
                    aux.rank
                ))
            })?;
            Ok(ClassRecord { prime: c.desc.clone(), point: label, mu, poly, members, provenance })
        })
        .collect::<Result<_>>()?;

    let zr = PolyRing::new(k.ints().clone(), nvars);
    let zero = |g: &MultiPoly<_>, q: &ProjPoint<_>| k.ints().is_zero(&zr.eval(g, &q.coords));
    let mut all_polys: Vec<&MultiPoly<_>> = classes.iter().map(|c| &c.poly).collect();
    if let Some(g) = high_mult.as_ref().and_then(|h| h.poly.as_ref()) {
        all_polys.push(g);
    }
    let uncovered: Vec<_> =
        points.par_iter().filter(|q| !all_polys.iter().any(|g| zero(g, q))).cloned().collect();
    for g in &all_polys {
        if g.degree() >= inp.d {
            return Err(Error::Internal("auxiliary form of degree at least d".into()));
        }
    }

    Ok(CoverResult {
        curve: f.clone(),
        h: inp.h,
        d: inp.d,
        regime: inp.regime,
        points,
        classes,
        high_mult,
        high_mult_refused: refused,
        uncovered,
        primes: inp.primes,
        polys_count_bound: params.c * inp.log_h.powi(params.kappa as i32),
        elapsed: start.elapsed(),
    })
}

/// Covers `C(K, H)` by forms of degree below `d`: one per low-multiplicity
/// residue class and one of degree `d'` through the remaining points.
pub fn cover_pipeline<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
    params: &CoverParams,
) -> Result<CoverResult<<K::Ints as Ring>::Elem>> {
    let start = Instant::now();
    if f.is_zero() || !f.is_homogeneous() || f.nvars() != 3 {
        return Err(Error::Precondition("a nonzero form in 3 variables is required".into()));
    }
    let d = f.degree();
    if d < 2 {
        return Err(Error::NotApplicable("forms of degree d - 1 = 0 are constants".into()));
    }
    if h <= 2 {
        return Err(Error::Precondition("H > 2 is required".into()));
    }
    let log_h = (h as f64).ln();
    let variant = match k.kind() {
        FieldKind::Rationals => RegimeVariant::CurveQ,
        FieldKind::FunctionField(_) => RegimeVariant::CurveK,
    };
    let regime = regime_check(d, h as f64, variant);
    let primes = match &params.primes {
        Some(p) => p.clone(),
        None => k.prime_ideals(log_h, params.m * log_h.powi(4))?,
    };
    let opts = EnumOptions { budget: params.budget, ..EnumOptions::collect() };
    let points = enum_curve_points_proj(k, f, h, &opts)?.points.expect("collected");
    let inp = CoreInput {
        curve: f,
        h,
        d,
        log_h,
        low_threshold: d as f64 / log_h,
        d_prime: (params.n * log_h).floor() as u32,
        regime,
        primes,
    };
    cover_core(k, inp, points, params, start)
}

/// The same covering for an affine hypersurface `f = 0` in `A^n` and its
/// integral points in the box `[B]^n`; classes are formed on the
/// homogenization, with points `(x : 1)`.
pub fn cover_pipeline_affine<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    b: u64,
    params: &CoverParams,
) -> Result<CoverResult<<K::Ints as Ring>::Elem>> {
    let start = Instant::now();
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let d = f.degree();
    if d < 2 {
        return Err(Error::NotApplicable("forms of degree d - 1 = 0 are constants".into()));
    }
    if b < 2 {
        return Err(Error::Precondition("B >= 2 is required".into()));
    }
    let log_h = (b as f64).ln();
    let regime = regime_check(d, b as f64, RegimeVariant::AffinePila(params.alpha.max(1.0)));
    let primes = match &params.primes {
        Some(p) => p.clone(),
        None => k.prime_ideals(log_h, params.m * log_h.powf(params.ell))?,
    };
    let opts = EnumOptions { budget: params.budget, ..EnumOptions::collect() };
    let affine = enum_affine_hypersurface(k, f, b, &opts)?.points.expect("collected");
    let ring = k.ints();
    let points: Vec<_> = affine
        .into_iter()
        .map(|x| {
            let height = x.iter().map(|c| k.abs_inf(c)).max().unwrap_or_default().max(BigUint::from(1u32));
            let mut coords = x;
            coords.push(ring.one());
            ProjPoint { height, coords }
        })
        .collect();
    let hom = PolyRing::new(ring.clone(), f.nvars()).homogenize(f);
    let inp = CoreInput {
        curve: &hom,
        h: b,
        d,
        log_h,
        low_threshold: d as f64 / log_h.powf(params.alpha),
        d_prime: log_h.powf(params.c_exp).floor() as u32,
        regime,
        primes,
    };
    cover_core(k, inp, points, params, start)
}
