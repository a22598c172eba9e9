use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mult_proj, proj_points_over};
use crate::algebra::{kernel_basis, monomials_of_degree, FiniteField, Matrix, MultiPoly, PolyRing};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusOptions {
    /// `mult > D/k` when set, `mult >= D/k` otherwise.
    pub strict: bool,
    pub cap_degree: u32,
    /// Maximum number of points of `P^n` to scan.
    pub budget: Option<u64>,
}

impl Default for LocusOptions {
    fn default() -> Self {
        LocusOptions { strict: true, cap_degree: 64, budget: Some(1 << 22) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HighMultLocus<E> {
    /// `D/k < 1`: every point of the hypersurface qualifies.
    AllPoints,
    EmptyLocus,
    Interpolant { poly: MultiPoly<E>, degree: u32, locus: Vec<Vec<E>> },
}

/// Points of `f_p = 0` of multiplicity above `D/k`, together with a nonzero
/// form of least degree vanishing on all of them.
pub fn high_mult_locus<F: FiniteField>(
    ring: &PolyRing<F>,
    f_p: &MultiPoly<F::Elem>,
    k: f64,
    opts: &LocusOptions,
) -> Result<HighMultLocus<F::Elem>> {
    if f_p.is_constant() {
        return Err(Error::Precondition("f_p must be nonconstant".into()));
    }
    if !(k >= 1.0) {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let n = ring.nvars() - 1;
    let d = f_p.degree() as f64;
    let t = d / k;
    if t < 1.0 {
        return Ok(HighMultLocus::AllPoints);
    }
    let q = ring.base().size();
    let total: u128 = (0..=n as u32).map(|i| (q as u128).pow(i)).sum();
    if let Some(limit) = opts.budget {
        if total > limit as u128 {
            return Err(Error::BudgetExceeded { used: total.min(u64::MAX as u128) as u64, limit });
        }
    }
    let pts = proj_points_over(ring.base(), n);
    let keep: Vec<bool> = pts
        .par_iter()
        .map(|p| {
            let m = mult_proj(ring, f_p, p).expect("normalized point") as f64;
            if opts.strict {
                m > t
            } else {
                m >= t
            }
        })
        .collect();
    let locus: Vec<_> = pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    if locus.is_empty() {
        return Ok(HighMultLocus::EmptyLocus);
    }
    match interpolate(ring, &locus, opts.cap_degree) {
        Some((poly, degree)) => Ok(HighMultLocus::Interpolant { poly, degree, locus }),
        None => Err(Error::NoInterpolant { cap: opts.cap_degree }),
    }
}

/// Least-degree nonzero form through `points`, degrees `1..=cap`.
pub(crate) fn interpolate<F: FiniteField>(
    ring: &PolyRing<F>,
    points: &[Vec<F::Elem>],
    cap: u32,
) -> Option<(MultiPoly<F::Elem>, u32)> {
    let b = ring.base();
    for e in 1..=cap {
        let monos = monomials_of_degree(ring.nvars(), e);
        let m = Matrix::from_fn(points.len(), monos.len(), |i, j| {
            ring.eval(&ring.monomial(monos[j].exps().to_vec(), b.one()), &points[i])
        });
        if let Some(v) = kernel_basis(b, &m).into_iter().next() {
            let h = ring.from_terms(monos.into_iter().zip(v));
            return Some((h, e));
        }
    }
    None
}
