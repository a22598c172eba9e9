//! Interpolation determinants: monomial bases, evaluation matrices at
//! bounded-height points, p-adic valuation certificates, auxiliary
//! polynomials for residue classes and the covering pipelines.

mod cover;

use serde::{Deserialize, Serialize};

pub use cover::{
    cover_high_mult, cover_pipeline, cover_pipeline_affine, ClassRecord, CoverParams, CoverResult, HighMultAudit,
    HighMultCover, Provenance,
};

use crate::algebra::{
    det_exact, kernel_basis, monomials_of_degree, EuclideanDomain, IntegralDomain, Matrix, Monomial, MultiPoly, PolyRing,
    PrimeIdealDesc, Ring,
};
use crate::error::{Error, Result};
use crate::globalfield::{biguint_ln, normalize_residue_point, reduce_point_mod_p, GlobalField, ProjPoint};
use crate::reduction::mult_proj;

/// All monomials of one degree, in the global (descending) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    /// Row of monomial values at `coords`.
    pub fn eval_row<R: Ring>(&self, ring: &R, coords: &[R::Elem]) -> Vec<R::Elem> {
        let powers: Vec<Vec<R::Elem>> = coords
            .iter()
            .map(|c| {
                let mut p = vec![ring.one()];
                for i in 0..self.degree as usize {
                    let next = ring.mul(&p[i], c);
                    p.push(next);
                }
                p
            })
            .collect();
        self.monomials
            .iter()
            .map(|m| m.iter().enumerate().fold(ring.one(), |acc, (i, &e)| ring.mul(&acc, &powers[i][e as usize])))
            .collect()
    }
}

pub fn monomial_basis(nvars: usize, degree: u32) -> MonomialBasis {
    let monomials = monomials_of_degree(nvars, degree).into_iter().map(|m| m.exps().to_vec()).collect();
    MonomialBasis { nvars, degree, monomials }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RegimeVariant {
    CurveQ,
    CurveK,
    /// `(log H)^N < d < H` with the given `N`.
    AffinePila(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeRecord {
    pub ok: bool,
    pub lhs: f64,
    pub d: u32,
    pub rhs: f64,
}

/// `(log H)^2 < d < H^{3/2}` for curves, `(log H)^N < d < H` for affine hypersurfaces.
pub fn regime_check(d: u32, h: f64, variant: RegimeVariant) -> RegimeRecord {
    let lh = h.ln();
    let (lhs, rhs) = match variant {
        RegimeVariant::CurveQ | RegimeVariant::CurveK => (lh * lh, h.powf(1.5)),
        RegimeVariant::AffinePila(n) => (lh.powf(n), h),
    };
    let df = d as f64;
    RegimeRecord { ok: lhs < df && df < rhs, lhs, d, rhs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    VanishesIdentically,
    MeetsBound,
    ViolatesBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValuationCertificate {
    pub prime: PrimeIdealDesc,
    pub residue_point: Vec<String>,
    pub mu: u32,
    pub basis: MonomialBasis,
    pub points: Vec<Vec<String>>,
    pub det: String,
    pub det_norm: String,
    /// `None` when the determinant vanishes.
    pub valuation: Option<u64>,
    pub a: f64,
    pub bound_rhs: f64,
    pub verdict: Verdict,
    pub log_det_norm: f64,
    /// `s log s + s (d-1) d_K log H`, with `d - 1` the basis degree.
    pub log_norm_cap: f64,
    pub norm_cap_ok: bool,
}

/// Residue point of a primitive tuple, scaled so the first nonzero entry is 1.
pub(crate) fn residue_of<K: GlobalField>(
    k: &K,
    res: &K::Residue,
    p: &PrimeIdealDesc,
    coords: &ProjPoint<<K::Ints as Ring>::Elem>,
) -> Result<Vec<<K::Residue as Ring>::Elem>> {
    let r = reduce_point_mod_p(k, coords, p)?;
    normalize_residue_point(res, &r)
}

/// Square interpolation determinant of `points` against the monomials of
/// `degree`, with its valuation at `p` compared to `s^2/(2 mu) - a s`.
/// When `curve` is given, `mu` is re-checked against the reduced curve.
pub fn interp_det_certificate<K: GlobalField>(
    k: &K,
    points: &[ProjPoint<<K::Ints as Ring>::Elem>],
    degree: u32,
    p: &PrimeIdealDesc,
    mu: u32,
    a: f64,
    curve: Option<&MultiPoly<<K::Ints as Ring>::Elem>>,
) -> Result<ValuationCertificate> {
    let first = points.first().ok_or_else(|| Error::Precondition("no points".into()))?;
    let nvars = first.coords.len();
    let basis = monomial_basis(nvars, degree);
    let s = basis.size();
    if points.len() != s {
        return Err(Error::DimensionMismatch(format!("{} points for a basis of size {s}", points.len())));
    }
    if mu == 0 {
        return Err(Error::Precondition("mu must be positive".into()));
    }
    let res = k.residue_field(p)?;
    let residue = residue_of(k, &res, p, first)?;
    for q in points {
        if q.coords.len() != nvars {
            return Err(Error::DimensionMismatch("points of mixed dimension".into()));
        }
        if residue_of(k, &res, p, q)? != residue {
            return Err(Error::Precondition(format!("points are not congruent modulo {}", p.label())));
        }
    }
    if let Some(f) = curve {
        let fp = crate::globalfield::reduce_poly(k, &res, &PolyRing::new(k.ints().clone(), nvars).primitive_part(f));
        let actual = mult_proj(&PolyRing::new(res.clone(), nvars), &fp, &residue)?;
        if actual != mu {
            return Err(Error::Precondition(format!("mu = {mu} but the reduced curve has multiplicity {actual}")));
        }
    }
    let ring = k.ints();
    let rows: Vec<Vec<_>> = points.iter().map(|q| basis.eval_row(ring, &q.coords)).collect();
    let det = det_exact(ring, &Matrix::from_rows(rows)?)?;
    let sf = s as f64;
    let bound_rhs = sf * sf / (2.0 * mu as f64) - a * sf;
    let det_norm = k.abs_inf(&det);
    let (valuation, verdict) = if ring.is_zero(&det) {
        (None, Verdict::VanishesIdentically)
    } else {
        let e = k.valuation(&det, p)?.expect("nonzero determinant");
        let v = if e as f64 >= bound_rhs { Verdict::MeetsBound } else { Verdict::ViolatesBound };
        (Some(e), v)
    };
    if verdict == Verdict::ViolatesBound {
        log::warn!(
            "valuation {:?} at {} is below s^2/(2mu) - as = {bound_rhs:.3} (s = {s}, mu = {mu}, a = {a})",
            valuation,
            p.label()
        );
    }
    let log_h = points.iter().map(|q| biguint_ln(&q.height)).fold(0.0, f64::max);
    let log_det_norm = if ring.is_zero(&det) { f64::NEG_INFINITY } else { biguint_ln(&det_norm) };
    let log_norm_cap = sf * sf.ln() + sf * degree as f64 * k.d_k() as f64 * log_h;
    Ok(ValuationCertificate {
        prime: p.clone(),
        residue_point: residue.iter().map(|c| res.fmt_elem(c)).collect(),
        mu,
        basis,
        points: points.iter().map(|q| q.coords.iter().map(|c| k.fmt_int(c)).collect()).collect(),
        det: k.fmt_int(&det),
        det_norm: det_norm.to_string(),
        valuation,
        a,
        bound_rhs,
        verdict,
        log_det_norm,
        // a tiny relative slack absorbs rounding in the logarithms
        norm_cap_ok: log_det_norm <= log_norm_cap * (1.0 + 1e-12) + 1e-9,
        log_norm_cap,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxPoly<E> {
    /// Primitive integral form; absent when the evaluation matrix has full rank.
    pub poly: Option<MultiPoly<E>>,
    pub rank: usize,
    pub s: usize,
    pub empty_class: bool,
}

/// A form of the given degree through every point, from a kernel vector of
/// the evaluation matrix over `K`.
pub fn aux_poly_for_points<K: GlobalField>(
    k: &K,
    nvars: usize,
    degree: u32,
    points: &[ProjPoint<<K::Ints as Ring>::Elem>],
) -> Result<AuxPoly<<K::Ints as Ring>::Elem>> {
    let basis = monomial_basis(nvars, degree);
    let s = basis.size();
    let zring = PolyRing::new(k.ints().clone(), nvars);
    if points.is_empty() {
        let poly = zring.monomial(basis.monomials[0].clone(), k.ints().one());
        return Ok(AuxPoly { poly: Some(poly), rank: 0, s, empty_class: true });
    }
    let fr = k.fracs();
    let rows: Vec<Vec<_>> = points
        .iter()
        .map(|q| basis.eval_row(k.ints(), &q.coords).iter().map(|v| k.to_frac(v)).collect())
        .collect();
    let m = Matrix::from_rows(rows)?;
    let kernel = kernel_basis(fr, &m);
    let rank = s - kernel.len();
    let Some(v) = kernel.into_iter().next() else {
        return Ok(AuxPoly { poly: None, rank, s, empty_class: false });
    };
    let coeffs = clear_denominators(k, &v);
    let g = zring.from_terms(basis.monomials.iter().map(|e| Monomial::new(e.clone())).zip(coeffs));
    let g = zring.primitive_part(&g);
    for q in points {
        if !k.ints().is_zero(&zring.eval(&g, &q.coords)) {
            return Err(Error::Internal("kernel vector does not vanish on its class".into()));
        }
    }
    Ok(AuxPoly { poly: Some(g), rank, s, empty_class: false })
}

fn clear_denominators<K: GlobalField>(
    k: &K,
    v: &[<K::Fracs as Ring>::Elem],
) -> Vec<<K::Ints as Ring>::Elem> {
    let r = k.ints();
    let parts: Vec<_> = v.iter().map(|x| k.split_frac(x)).collect();
    let lcm = parts.iter().fold(r.one(), |l, (_, d)| {
        let g = r.gcd(&l, d);
        r.exact_div(&r.mul(&l, d), &g).expect("gcd divides")
    });
    parts.iter().map(|(n, d)| r.mul(n, &r.exact_div(&lcm, d).expect("divides lcm"))).collect()
}

/// Points of `C(K, H)` reducing to `residue` modulo `p`, and a form of degree
/// `d - 1` through them.
pub fn aux_poly_for_residue_class<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
    p: &PrimeIdealDesc,
    residue: &[<K::Residue as Ring>::Elem],
    budget: Option<u64>,
) -> Result<(Vec<ProjPoint<<K::Ints as Ring>::Elem>>, AuxPoly<<K::Ints as Ring>::Elem>)> {
    let red = crate::reduction::reduce_curve_mod_p(k, f, p)?;
    if !red.good {
        return Err(Error::Precondition(format!("bad reduction modulo {}", p.label())));
    }
    let res = k.residue_field(p)?;
    let target = normalize_residue_point(&res, residue)?;
    let opts = crate::enumerate::EnumOptions { budget, ..crate::enumerate::EnumOptions::collect() };
    let all = crate::enumerate::enum_curve_points_proj(k, f, h, &opts)?.points.expect("collected");
    let mut class = Vec::new();
    for q in all {
        if residue_of(k, &res, p, &q)? == target {
            class.push(q);
        }
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::NotApplicable("constant curve".into()));
    }
    let aux = aux_poly_for_points(k, f.nvars(), d - 1, &class)?;
    Ok((class, aux))
}
