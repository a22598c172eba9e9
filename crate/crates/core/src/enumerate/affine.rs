use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use super::sieve::{default_sieve_primes, ResidueSieve};
use super::{check_budget, horner, AffineResult, EnumOptions, Mode, PointSetResult};
use crate::algebra::{EuclideanDomain, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::globalfield::GlobalField;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineStrategy {
    /// Solve for the last coordinate: a nonzero root of `X^v h(X)` divides `h(0)`.
    RootExtraction,
    /// Test every tuple of the box, after the residue sieve.
    GridSieve,
}

/// All `x` in `[B]^n` with `f(x) = 0`.
pub fn enum_affine_hypersurface<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    b: u64,
    opts: &EnumOptions,
) -> Result<AffineResult<K>> {
    let strategy =
        if f.uses_var(f.nvars().saturating_sub(1)) { AffineStrategy::RootExtraction } else { AffineStrategy::GridSieve };
    enum_affine_with(k, f, b, opts, strategy)
}

pub fn enum_affine_with<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    b: u64,
    opts: &EnumOptions,
    strategy: AffineStrategy,
) -> Result<AffineResult<K>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = f.nvars();
    if n < 2 {
        return Err(Error::Precondition("affine hypersurfaces need n >= 2".into()));
    }
    let start = Instant::now();
    let ring = k.ints();
    let vals = k.ints_in_box(b);
    let m = vals.len();
    check_budget((m as u128).saturating_pow(n as u32), opts.budget)?;
    let pr = PolyRing::new(ring.clone(), n);
    let last = n - 1;
    let coeff_polys = pr.coeffs_in_var(f, last);
    let primes = opts.sieve.clone().unwrap_or_else(|| default_sieve_primes(k, n));
    let sieve = ResidueSieve::build(k, f, &primes, &vals)?;
    let zero_pos = vals.iter().position(|v| ring.is_zero(v)).expect("zero in box");
    let collect = opts.mode == Mode::Collect;

    let inner = |first: usize| {
        let mut count = 0u64;
        let mut rejected = 0u64;
        let mut found = Vec::new();
        let mut pos = vec![0usize; n];
        pos[0] = first;
        let mut point = vec![ring.zero(); n];
        let blocks = (m as u64).pow(last.saturating_sub(1) as u32);
        for blk in 0..blocks {
            let mut r = blk;
            for slot in pos.iter_mut().take(last).skip(1) {
                *slot = (r % m as u64) as usize;
                r /= m as u64;
            }
            for i in 0..last {
                point[i] = vals[pos[i]].clone();
            }
            let cs: Vec<_> = coeff_polys.iter().map(|c| pr.eval(c, &point)).collect();
            let candidates: Vec<usize> = match strategy {
                AffineStrategy::GridSieve => (0..m).collect(),
                AffineStrategy::RootExtraction => root_candidates(ring, &cs, &vals, zero_pos),
            };
            for lp in candidates {
                pos[last] = lp;
                if !sieve.passes(&pos) {
                    rejected += 1;
                    continue;
                }
                if !ring.is_zero(&horner(ring, &cs, &vals[lp])) {
                    continue;
                }
                count += 1;
                if collect {
                    found.push(pos.iter().map(|&p| vals[p].clone()).collect::<Vec<_>>());
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

/// Candidate roots of `sum cs[k] X^k` among `vals`.
fn root_candidates<R: EuclideanDomain>(ring: &R, cs: &[R::Elem], vals: &[R::Elem], zero_pos: usize) -> Vec<usize> {
    let Some(v) = cs.iter().position(|c| !ring.is_zero(c)) else {
        return (0..vals.len()).collect();
    };
    let h0 = &cs[v];
    let mut out = Vec::new();
    for (i, x) in vals.iter().enumerate() {
        if i == zero_pos {
            if v > 0 {
                out.push(i);
            }
            continue;
        }
        if cs.len() == v + 1 {
            // the polynomial is a monomial, only 0 can be a root
            continue;
        }
        if ring.is_zero(&ring.div_rem(h0, x).1) {
            out.push(i);
        }
    }
    out
}

/// Brute force over the whole box.
pub fn enum_affine_oracle<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    b: u64,
) -> Vec<Vec<<K::Ints as Ring>::Elem>> {
    let ring = k.ints();
    let vals = k.ints_in_box(b);
    let n = f.nvars();
    let m = vals.len() as u64;
    let pr = PolyRing::new(ring.clone(), n);
    let mut out = BTreeSet::new();
    let mut tuple = vec![ring.zero(); n];
    for idx in 0..m.pow(n as u32) {
        let mut r = idx;
        for c in tuple.iter_mut() {
            *c = vals[(r % m) as usize].clone();
            r /= m;
        }
        if ring.is_zero(&pr.eval(f, &tuple)) {
            out.insert(tuple.clone());
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, FqPolyRing, Integers};
    use crate::globalfield::{FunctionField, RationalField};

    fn zpoly(s: &str, n: usize) -> MultiPoly<num_bigint::BigInt> {
        parse_poly(&PolyRing::new(Integers, n), s).unwrap()
    }

    #[test]
    fn examples() {
        let q = RationalField::new();
        let o = EnumOptions::collect();
        assert_eq!(enum_affine_hypersurface(&q, &zpoly("x0 - x1", 2), 3, &o).unwrap().count, 7);
        let r = enum_affine_hypersurface(&q, &zpoly("x0*x1 - 2", 2), 2, &o).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.points.unwrap(), enum_affine_oracle(&q, &zpoly("x0*x1 - 2", 2), 2));
        assert_eq!(enum_affine_hypersurface(&q, &zpoly("x0^2 + x1^2 - 1", 2), 1, &o).unwrap().count, 4);
    }

    #[test]
    fn strategies_agree() {
        let q = RationalField::new();
        let o = EnumOptions::collect();
        for s in ["x0*x1*x2 - 1", "x0^2 - x1*x2^2 + x2", "x2^3 - x0*x1", "x0 + x1"] {
            let f = zpoly(s, 3);
            let a = enum_affine_with(&q, &f, 4, &o, AffineStrategy::RootExtraction).unwrap();
            let b = enum_affine_with(&q, &f, 4, &o.clone().with_sieve(vec![]), AffineStrategy::GridSieve).unwrap();
            assert_eq!(a.points, b.points, "{s}");
            assert_eq!(a.points.unwrap(), enum_affine_oracle(&q, &f, 4), "{s}");
        }
    }

    #[test]
    fn function_field_roots() {
        let k = FunctionField::new(3).unwrap();
        let r = PolyRing::new(FqPolyRing::new(3).unwrap(), 2);
        let f = parse_poly(&r, "x0*x1 - t^2").unwrap();
        let res = enum_affine_hypersurface(&k, &f, 9, &EnumOptions::collect()).unwrap();
        assert_eq!(res.points.unwrap(), enum_affine_oracle(&k, &f, 9));
    }
}
