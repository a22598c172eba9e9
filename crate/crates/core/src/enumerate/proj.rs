use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::sieve::{default_sieve_primes, ResidueSieve};
use super::{check_budget, horner, EnumOptions, Mode, PointSetResult, ProjResult};
use crate::algebra::{EuclideanDomain, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::globalfield::{normalize_ints, GlobalField, ProjPoint};

/// All points of `P^n(K)` of height at most `h`.
pub fn enum_proj_points<K: GlobalField>(k: &K, n: usize, h: u64, opts: &EnumOptions) -> Result<ProjResult<K>> {
    if n < 1 || h < 1 {
        return Err(Error::Precondition("need n >= 1 and H >= 1".into()));
    }
    traverse(k, n + 1, h, None, opts)
}

/// Points of height at most `h` on the projective hypersurface `f = 0`.
pub fn enum_proj_zeros<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
    opts: &EnumOptions,
) -> Result<ProjResult<K>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_homogeneous() {
        return Err(Error::Precondition("projective constraint must be homogeneous".into()));
    }
    if f.nvars() < 2 || h < 1 {
        return Err(Error::Precondition("need at least 2 variables and H >= 1".into()));
    }
    traverse(k, f.nvars(), h, Some(f), opts)
}

/// `C(K, H)` for a plane curve `f(x0, x1, x2) = 0`.
pub fn enum_curve_points_proj<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
    opts: &EnumOptions,
) -> Result<ProjResult<K>> {
    if f.nvars() != 3 {
        return Err(Error::DimensionMismatch(format!("plane curve needs 3 variables, got {}", f.nvars())));
    }
    enum_proj_zeros(k, f, h, opts)
}

fn traverse<K: GlobalField>(
    k: &K,
    nvars: usize,
    h: u64,
    f: Option<&MultiPoly<<K::Ints as Ring>::Elem>>,
    opts: &EnumOptions,
) -> Result<ProjResult<K>> {
    let start = Instant::now();
    let ring = k.ints();
    let vals = k.ints_in_box(h);
    let m = vals.len();
    check_budget((m as u128).saturating_pow(nvars as u32), opts.budget)?;
    let canonical: Vec<bool> = vals
        .iter()
        .map(|v| !ring.is_zero(v) && ring.is_one(&ring.unit_normal(v).0))
        .collect();
    let abs: Vec<BigUint> = vals.iter().map(|v| k.abs_inf(v)).collect();
    let zero_pos = vals.iter().position(|v| ring.is_zero(v)).expect("zero is in every box");
    let last = nvars - 1;

    let (coeff_polys, sieve) = match f {
        Some(f) => {
            let pr = PolyRing::new(ring.clone(), nvars);
            let primes = opts.sieve.clone().unwrap_or_else(|| default_sieve_primes(k, nvars));
            (pr.coeffs_in_var(f, last), ResidueSieve::build(k, f, &primes, &vals)?)
        }
        None => (Vec::new(), ResidueSieve::empty()),
    };
    let pr = PolyRing::new(ring.clone(), nvars);
    let collect = opts.mode == Mode::Collect;

    let inner = |first: usize| -> (u64, u64, Vec<ProjPoint<<K::Ints as Ring>::Elem>>) {
        let mut count = 0u64;
        let mut rejected = 0u64;
        let mut found = Vec::new();
        let rest = last.saturating_sub(1) as u32;
        let blocks = (m as u64).pow(rest);
        let mut pos = vec![0usize; nvars];
        pos[0] = first;
        let mut point = vec![ring.zero(); nvars];
        for b in 0..blocks {
            if last == 0 {
                break;
            }
            let mut r = b;
            for slot in pos.iter_mut().take(last).skip(1) {
                *slot = (r % m as u64) as usize;
                r /= m as u64;
            }
            let prefix_first = pos[..last].iter().copied().find(|&p| p != zero_pos);
            if let Some(p) = prefix_first {
                if !canonical[p] {
                    continue;
                }
            }
            let g = pos[..last].iter().fold(ring.zero(), |g, &p| ring.gcd(&g, &vals[p]));
            for i in 0..last {
                point[i] = vals[pos[i]].clone();
            }
            let univariate: Option<Vec<_>> = f.map(|_| coeff_polys.iter().map(|c| pr.eval(c, &point)).collect());
            for lp in 0..m {
                if prefix_first.is_none() && !canonical[lp] {
                    continue;
                }
                if !ring.is_one(&ring.gcd(&g, &vals[lp])) {
                    continue;
                }
                pos[last] = lp;
                if let Some(cs) = &univariate {
                    if !sieve.passes(&pos) {
                        rejected += 1;
                        continue;
                    }
                    if !ring.is_zero(&horner(ring, cs, &vals[lp])) {
                        continue;
                    }
                }
                count += 1;
                if collect {
                    let coords: Vec<_> = pos.iter().map(|&p| vals[p].clone()).collect();
                    let height = pos.iter().map(|&p| abs[p].clone()).max().expect("nonempty");
                    found.push(ProjPoint { height, coords });
                }
            }
        }
        (count, rejected, found)
    };

    let parts: Vec<_> = (0..m).into_par_iter().map(inner).collect();
    let count = parts.iter().map(|p| p.0).sum();
    let sieve_rejections = parts.iter().map(|p| p.1).sum();
    let points = collect.then(|| {
        let mut pts: Vec<_> = parts.into_iter().flat_map(|p| p.2).collect();
        pts.sort();
        pts
    });
    Ok(PointSetResult { count, points, elapsed: start.elapsed(), sieve_rejections })
}

fn oracle<K: GlobalField>(
    k: &K,
    nvars: usize,
    h: u64,
    f: Option<&MultiPoly<<K::Ints as Ring>::Elem>>,
) -> Vec<ProjPoint<<K::Ints as Ring>::Elem>> {
    let ring = k.ints();
    let vals = k.ints_in_box(h);
    let m = vals.len() as u64;
    let pr = PolyRing::new(ring.clone(), nvars);
    let mut out = BTreeSet::new();
    let mut tuple = vec![ring.zero(); nvars];
    for idx in 0..m.pow(nvars as u32) {
        let mut r = idx;
        for c in tuple.iter_mut() {
            *c = vals[(r % m) as usize].clone();
            r /= m;
        }
        if tuple.iter().all(|c| ring.is_zero(c)) {
            continue;
        }
        if let Some(f) = f {
            if !ring.is_zero(&pr.eval(f, &tuple)) {
                continue;
            }
        }
        let p = normalize_ints(k, &tuple).expect("nonzero tuple");
        if p.height <= BigUint::from(h) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Brute force over the full coordinate box, normalizing every tuple.
pub fn enum_proj_points_oracle<K: GlobalField>(k: &K, n: usize, h: u64) -> Vec<ProjPoint<<K::Ints as Ring>::Elem>> {
    oracle(k, n + 1, h, None)
}

pub fn enum_curve_points_oracle<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    h: u64,
) -> Vec<ProjPoint<<K::Ints as Ring>::Elem>> {
    oracle(k, f.nvars(), h, Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Integers};
    use crate::globalfield::{FunctionField, RationalField};

    fn zpoly(s: &str) -> MultiPoly<num_bigint::BigInt> {
        parse_poly(&PolyRing::new(Integers, 3), s).unwrap()
    }

    #[test]
    fn projective_line_counts() {
        let q = RationalField::new();
        let o = EnumOptions::collect();
        assert_eq!(enum_proj_points(&q, 1, 1, &o).unwrap().count, 4);
        assert_eq!(enum_proj_points(&q, 1, 2, &o).unwrap().count, 8);
        let ff = FunctionField::new(2).unwrap();
        // coprime pairs from {0, 1, t, t+1}: 15 nonzero pairs minus 6 sharing t or t+1
        assert_eq!(enum_proj_points(&ff, 1, 2, &o).unwrap().count, 9);
        assert_eq!(
            enum_proj_points(&ff, 1, 4, &o).unwrap().points.unwrap(),
            enum_proj_points_oracle(&ff, 1, 4)
        );
        let r = enum_proj_points(&q, 2, 3, &o).unwrap();
        assert_eq!(r.points.unwrap(), enum_proj_points_oracle(&q, 2, 3));
    }

    #[test]
    fn curve_examples() {
        let q = RationalField::new();
        let o = EnumOptions::collect();
        let conic = zpoly("x0*x2 - x1^2");
        let r = enum_curve_points_proj(&q, &conic, 4, &o).unwrap();
        // (b^2 : ab : a^2) for the 8 points (a : b) of P^1(Q) with height <= 2
        assert_eq!(r.count, 8);
        assert_eq!(r.points.unwrap(), enum_curve_points_oracle(&q, &conic, 4));
        assert_eq!(enum_curve_points_proj(&q, &zpoly("x0"), 2, &o).unwrap().count, 8);
        assert_eq!(enum_curve_points_proj(&q, &zpoly("x0^2 + x1^2 + x2^2"), 6, &o).unwrap().count, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let q = RationalField::new();
        let o = EnumOptions::default().with_budget(100);
        assert!(matches!(enum_proj_points(&q, 2, 5, &o), Err(Error::BudgetExceeded { limit: 100, .. })));
    }

    #[test]
    fn heights_are_sorted() {
        let q = RationalField::new();
        let pts = enum_proj_points(&q, 2, 4, &EnumOptions::collect()).unwrap().points.unwrap();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| p.height <= BigUint::from(4u32)));
    }
}
