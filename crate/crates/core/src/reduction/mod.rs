//! Reduction modulo primes and local invariants of hypersurfaces and
//! effective cycles: multiplicities, derivative cycles, plane-curve
//! intersection numbers, the intersection cycle `A`, and capture of the
//! high-multiplicity locus by a low-degree form.

mod cycle_a;
mod intersection;
mod locus;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use cycle_a::{claim_audit, cycle_a, ClaimRecord, CycleA};
pub use intersection::{
    fulton_intersection_number, fulton_intersection_proj, resultant, resultant_degree, Intersection,
};
pub use locus::{high_mult_locus, HighMultLocus, LocusOptions};

use crate::algebra::{Field, FiniteField, MultiPoly, PolyRing, PrimeIdealDesc, Ring};
use crate::error::{Error, Result};
use crate::globalfield::{reduce_poly, GlobalField};

/// Coefficient-wise reduction of a primitive representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedHypersurface<E> {
    pub f_p: MultiPoly<E>,
    pub original_degree: u32,
    pub reduced_degree: u32,
    pub good: bool,
}

pub fn reduce_curve_mod_p<K: GlobalField>(
    k: &K,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
    p: &PrimeIdealDesc,
) -> Result<ReducedHypersurface<<K::Residue as Ring>::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let pr = PolyRing::new(k.ints().clone(), f.nvars());
    let prim = pr.primitive_part(f);
    let res = k.residue_field(p)?;
    let f_p = reduce_poly(k, &res, &prim);
    if f_p.is_zero() {
        return Err(Error::Internal("primitive polynomial reduced to zero".into()));
    }
    let reduced_degree = f_p.degree();
    Ok(ReducedHypersurface { good: !f_p.is_constant(), f_p, original_degree: f.degree(), reduced_degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultContext {
    Hypersurface,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport<E> {
    pub point: Vec<E>,
    pub mu: u32,
    pub context: MultContext,
}

/// Multiplicity of the affine hypersurface `f = 0` at `p`: the least total
/// degree of a nonzero homogeneous part of `f(x + p)`.
pub fn mult_affine<F: Ring>(ring: &PolyRing<F>, f: &MultiPoly<F::Elem>, p: &[F::Elem]) -> u32 {
    assert!(!f.is_zero(), "multiplicity of the zero polynomial");
    // cheap test first: f(p) != 0 means multiplicity 0
    if !ring.base().is_zero(&ring.eval(f, p)) {
        return 0;
    }
    ring.translate(f, p).low_degree().expect("nonzero")
}

/// Projective multiplicity computed in the affine chart `x_chart = 1`.
pub fn mult_proj_chart<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    p: &[F::Elem],
    chart: usize,
) -> Result<u32> {
    let b = ring.base();
    let inv = b.inv(&p[chart]).ok_or_else(|| Error::Precondition("chart coordinate is zero".into()))?;
    let aff: Vec<_> = p.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, c)| b.mul(c, &inv)).collect();
    let g = ring.dehomogenize(f, chart);
    Ok(mult_affine(&ring.with_nvars(f.nvars() - 1), &g, &aff))
}

/// Projective multiplicity in the chart of the last nonzero coordinate.
pub fn mult_proj<F: Field>(ring: &PolyRing<F>, f: &MultiPoly<F::Elem>, p: &[F::Elem]) -> Result<u32> {
    let b = ring.base();
    let chart = p.iter().rposition(|c| !b.is_zero(c)).ok_or(Error::AllZero)?;
    mult_proj_chart(ring, f, p, chart)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<E> {
    Projective(Vec<E>),
    Affine(Vec<E>),
}

pub fn mult_at_point<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    p: &Point<F::Elem>,
) -> Result<MultiplicityReport<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (coords, mu) = match p {
        Point::Projective(c) => {
            if c.len() != f.nvars() {
                return Err(Error::DimensionMismatch("point dimension".into()));
            }
            (c.clone(), mult_proj(ring, f, c)?)
        }
        Point::Affine(c) => {
            if c.len() != f.nvars() {
                return Err(Error::DimensionMismatch("point dimension".into()));
            }
            (c.clone(), mult_affine(ring, f, c))
        }
    };
    Ok(MultiplicityReport { point: coords, mu, context: MultContext::Hypersurface })
}

/// Effective cycle `sum n_j C_j` given by defining forms and multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredCycle<E> {
    pub components: Vec<(MultiPoly<E>, u32)>,
}

impl<E: Clone + PartialEq> FactoredCycle<E> {
    pub fn new<F: Field<Elem = E>>(ring: &PolyRing<F>, components: Vec<(MultiPoly<E>, u32)>) -> Result<Self> {
        let mut seen = Vec::new();
        for (f, n) in &components {
            if *n == 0 {
                return Err(Error::Precondition("component multiplicity must be positive".into()));
            }
            if f.is_constant() {
                return Err(Error::Precondition("components must be nonconstant".into()));
            }
            if f.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch("component in the wrong ring".into()));
            }
            let m = ring.monic(f);
            if seen.contains(&m) {
                return Err(Error::Precondition("components must be pairwise non-associate".into()));
            }
            seen.push(m);
        }
        Ok(FactoredCycle { components })
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(|(f, n)| n * f.degree()).sum()
    }

    pub fn expand<F: Field<Elem = E>>(&self, ring: &PolyRing<F>) -> MultiPoly<E> {
        self.components.iter().fold(ring.one(), |acc, (f, n)| ring.mul(&acc, &ring.pow(f, *n as u64)))
    }
}

pub fn cycle_mult<F: Field>(
    ring: &PolyRing<F>,
    cycle: &FactoredCycle<F::Elem>,
    p: &[F::Elem],
) -> Result<MultiplicityReport<F::Elem>> {
    let mut mu = 0;
    for (f, n) in &cycle.components {
        mu += n * mult_proj(ring, f, p)?;
    }
    Ok(MultiplicityReport { point: p.to_vec(), mu, context: MultContext::Cycle })
}

pub const DERIVATIVE_RETRIES: u32 = 32;

/// `sum a_i df/dx_i`. When this vanishes identically, `a` is resampled from a
/// generator seeded with `seed`, up to `DERIVATIVE_RETRIES` attempts.
pub fn derivative_cycle<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    a: &[F::Elem],
    seed: u64,
) -> Result<(MultiPoly<F::Elem>, Vec<F::Elem>)> {
    if f.is_constant() {
        return Err(Error::Precondition("derivative cycle of a constant".into()));
    }
    let partials: Vec<_> = (0..f.nvars()).map(|i| ring.partial(f, i)).collect();
    let combine = |a: &[F::Elem]| {
        partials.iter().zip(a).fold(ring.zero(), |acc, (d, c)| ring.add(&acc, &ring.scale(d, c)))
    };
    let g = combine(a);
    if !g.is_zero() {
        return Ok((g, a.to_vec()));
    }
    if partials.iter().all(MultiPoly::is_zero) {
        return Err(Error::DerivativeIdenticallyZero { attempts: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 1..DERIVATIVE_RETRIES {
        let a: Vec<_> = (0..f.nvars()).map(|_| ring.base().sample(&mut rng)).collect();
        let g = combine(&a);
        if !g.is_zero() {
            return Ok((g, a));
        }
    }
    Err(Error::DerivativeIdenticallyZero { attempts: DERIVATIVE_RETRIES })
}

/// All points of `P^n(F)`, first nonzero coordinate 1, in index order.
pub fn proj_points_over<F: FiniteField>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let q = field.size();
    let mut out = Vec::new();
    for lead in 0..=n {
        // coordinates before `lead` are 0, `lead` is 1, after are free
        let free = (n - lead) as u32;
        for idx in 0..q.pow(free) {
            let mut p = vec![field.zero(); n + 1];
            p[lead] = field.one();
            let mut r = idx;
            for c in p.iter_mut().skip(lead + 1) {
                *c = field.elem_at(r % q);
                r /= q;
            }
            out.push(p);
        }
    }
    out
}

/// `(x_1 + ... + x_n)^2 < 2 sum_{j != l} x_j x_l` whenever every `2 x_j` is
/// below the total (the sum runs over ordered pairs). Returns whether the
/// implication holds for `xs`.
pub fn silly_arithmetic_check(xs: &[u64]) -> bool {
    let total: u128 = xs.iter().map(|&x| x as u128).sum();
    let hypothesis = !xs.is_empty() && xs.iter().all(|&x| (2 * x as u128) < total);
    if !hypothesis {
        return true;
    }
    let squares: u128 = xs.iter().map(|&x| x as u128 * x as u128).sum();
    let cross = total * total - squares;
    total * total < 2 * cross
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Integers, PrimeField, Rationals};
    use crate::globalfield::RationalField;

    fn fp(p: u64) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(p).unwrap(), 3)
    }

    #[test]
    fn reductions() {
        let k = RationalField::new();
        let z = PolyRing::new(Integers, 3);
        let p5 = PrimeIdealDesc::integer(5).unwrap();
        let r = reduce_curve_mod_p(&k, &parse_poly(&z, "x0*x2 - x1^2").unwrap(), &p5).unwrap();
        assert!(r.good && r.reduced_degree == 2);
        let r = reduce_curve_mod_p(&k, &parse_poly(&z, "5*x0^2 + x1*x2").unwrap(), &p5).unwrap();
        assert_eq!(r.f_p, parse_poly(&fp(5), "x1*x2").unwrap());
        assert!(r.good && r.reduced_degree == 2);
        let p3 = PrimeIdealDesc::integer(3).unwrap();
        let r = reduce_curve_mod_p(&k, &parse_poly(&z, "x0^2 + 3*x1^2").unwrap(), &p3).unwrap();
        assert_eq!(r.f_p, parse_poly(&fp(3), "x0^2").unwrap());
        let r = reduce_curve_mod_p(&k, &parse_poly(&z, "10*x0 + 5*x1").unwrap(), &p5).unwrap();
        assert_eq!(r.f_p, parse_poly(&fp(5), "2*x0 + x1").unwrap());
    }

    #[test]
    fn multiplicities() {
        let q2 = PolyRing::new(Rationals, 2);
        let node = parse_poly(&q2, "x*y").unwrap();
        let zero = vec![Rationals.zero(), Rationals.zero()];
        assert_eq!(mult_at_point(&q2, &node, &Point::Affine(zero)).unwrap().mu, 2);
        let q3 = PolyRing::new(Rationals, 3);
        let cusp = parse_poly(&q3, "x1^2*x2 - x0^3").unwrap();
        let p = vec![Rationals.zero(), Rationals.zero(), Rationals.one()];
        assert_eq!(mult_proj(&q3, &cusp, &p).unwrap(), 2);
        let r7 = fp(7);
        let f = parse_poly(&r7, "x0^3*x1 + x1^4").unwrap();
        assert_eq!(mult_proj(&r7, &f, &[0, 0, 1]).unwrap(), 4);
        assert_eq!(mult_proj(&r7, &f, &[1, 0, 0]).unwrap(), 1);
    }

    #[test]
    fn cycle_multiplicities() {
        let r = fp(7);
        let c = |s: &str, n| (parse_poly(&r, s).unwrap(), n);
        let g = FactoredCycle::new(&r, vec![c("x0", 3)]).unwrap();
        assert_eq!(cycle_mult(&r, &g, &[0, 1, 0]).unwrap().mu, 3);
        let g = FactoredCycle::new(&r, vec![c("x0", 1), c("x1", 1)]).unwrap();
        assert_eq!(cycle_mult(&r, &g, &[0, 0, 1]).unwrap().mu, 2);
        let g = FactoredCycle::new(&r, vec![c("x0", 2), c("x0 + x1", 1)]).unwrap();
        assert_eq!(cycle_mult(&r, &g, &[0, 0, 1]).unwrap().mu, 3);
        assert_eq!(mult_proj(&r, &g.expand(&r), &[0, 0, 1]).unwrap(), 3);
        assert!(FactoredCycle::new(&r, vec![c("x0", 1), c("3*x0", 1)]).is_err());
    }

    #[test]
    fn derivatives() {
        let q3 = PolyRing::new(Rationals, 3);
        let one = Rationals.one();
        let zero = Rationals.zero();
        let f = parse_poly(&q3, "x0*x2 - x1^2").unwrap();
        let (g, _) = derivative_cycle(&q3, &f, &[one.clone(), zero.clone(), zero.clone()], 1).unwrap();
        assert_eq!(g, parse_poly(&q3, "x2").unwrap());
        let f = parse_poly(&q3, "x0^3 + x1^3 + x2^3").unwrap();
        let (g, _) = derivative_cycle(&q3, &f, &[one.clone(), one.clone(), one.clone()], 1).unwrap();
        assert_eq!(g, parse_poly(&q3, "3*(x0^2 + x1^2 + x2^2)").unwrap());
        let r2 = fp(2);
        let sq = parse_poly(&r2, "x0^2").unwrap();
        assert!(matches!(derivative_cycle(&r2, &sq, &[1, 1, 1], 7), Err(Error::DerivativeIdenticallyZero { .. })));
        // a = (0,0,1) kills the derivative of x0*x1 mod 2; resampling recovers
        let f = parse_poly(&r2, "x0*x1 + x2^2").unwrap();
        let (g, a) = derivative_cycle(&r2, &f, &[0, 0, 1], 7).unwrap();
        assert!(!g.is_zero() && a != vec![0, 0, 1]);
    }

    #[test]
    fn projective_points_over_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let pts = proj_points_over(&f3, 2);
        assert_eq!(pts.len(), 13);
    }

    #[test]
    fn silly_arithmetic_examples() {
        assert!(silly_arithmetic_check(&[1, 1, 1]));
        assert!(silly_arithmetic_check(&[3, 1, 1]));
        assert!(silly_arithmetic_check(&[2, 2, 1]));
    }
}
