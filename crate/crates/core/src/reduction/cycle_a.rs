use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::intersection::{fulton_intersection_proj, resultant_degree, Intersection};
use super::{mult_proj, proj_points_over, FactoredCycle, DERIVATIVE_RETRIES};
use crate::algebra::{FiniteField, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};

/// The zero-cycle `A = sum_j n_j C_j . (n_j C'_j + sum_{l != j} n_l C_l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleA<E> {
    /// Rational points with positive multiplicity on `A`.
    pub points: Vec<(Vec<E>, u32)>,
    /// Degree over the algebraic closure, from resultants.
    pub degree: u64,
    /// `D^2 - sum n_j^2 deg C_j`.
    pub expected_degree: u64,
    pub derivatives: Vec<MultiPoly<E>>,
    pub a: Vec<E>,
}

fn local<F: FiniteField>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    p: &[F::Elem],
) -> Result<u64> {
    match fulton_intersection_proj(ring, f, g, p)? {
        Intersection::Finite(n) => Ok(n as u64),
        Intersection::Infinite => Err(Error::NonProperIntersection("common component through a point".into())),
    }
}

pub fn cycle_a<F: FiniteField>(
    ring: &PolyRing<F>,
    cycle: &FactoredCycle<F::Elem>,
    a: &[F::Elem],
    seed: u64,
) -> Result<CycleA<F::Elem>> {
    if ring.nvars() != 3 || a.len() != 3 {
        return Err(Error::DimensionMismatch("cycle A is defined for plane curves".into()));
    }
    let comps = &cycle.components;
    let partials: Vec<Vec<_>> = comps.iter().map(|(f, _)| (0..3).map(|i| ring.partial(f, i)).collect()).collect();
    if partials.iter().any(|ps| ps.iter().all(MultiPoly::is_zero)) {
        return Err(Error::DerivativeIdenticallyZero { attempts: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = a.to_vec();
    let mut chosen = None;
    for _ in 0..DERIVATIVE_RETRIES {
        let ders: Vec<_> = partials
            .iter()
            .map(|ps| ps.iter().zip(&a).fold(ring.zero(), |acc, (d, c)| ring.add(&acc, &ring.scale(d, c))))
            .collect();
        let mut self_degrees = Vec::new();
        for ((f, _), g) in comps.iter().zip(&ders) {
            if g.is_zero() {
                break;
            }
            match resultant_degree(ring, f, g, seed) {
                Ok(d) => self_degrees.push(d as u64),
                Err(Error::NonProperIntersection(_)) => break,
                Err(e) => return Err(e),
            }
        }
        if self_degrees.len() == comps.len() {
            chosen = Some((ders, self_degrees));
            break;
        }
        a = (0..3).map(|_| ring.base().sample(&mut rng)).collect();
    }
    let (ders, self_degrees) = chosen.ok_or(Error::DerivativeIdenticallyZero { attempts: DERIVATIVE_RETRIES })?;

    let mut degree = 0u64;
    for (j, (fj, nj)) in comps.iter().enumerate() {
        let nj = *nj as u64;
        let mut inner = nj * self_degrees[j];
        for (l, (fl, nl)) in comps.iter().enumerate() {
            if l != j {
                inner += *nl as u64 * resultant_degree(ring, fj, fl, seed)? as u64;
            }
        }
        degree += nj * inner;
    }
    let big_d: u64 = cycle.degree() as u64;
    let expected = big_d * big_d - comps.iter().map(|(f, n)| (*n as u64).pow(2) * f.degree() as u64).sum::<u64>();
    if degree != expected {
        return Err(Error::Internal(format!("deg A = {degree} disagrees with the Bezout count {expected}")));
    }

    let pts = proj_points_over(ring.base(), 2);
    let b = ring.base();
    let scored: Result<Vec<_>> = pts
        .into_par_iter()
        .map(|p| {
            let mut m = 0u64;
            for (j, (fj, nj)) in comps.iter().enumerate() {
                if !b.is_zero(&ring.eval(fj, &p)) {
                    continue;
                }
                let nj = *nj as u64;
                let mut inner = nj * local(ring, fj, &ders[j], &p)?;
                for (l, (fl, nl)) in comps.iter().enumerate() {
                    if l != j {
                        inner += *nl as u64 * local(ring, fj, fl, &p)?;
                    }
                }
                m += nj * inner;
            }
            Ok((p, m as u32))
        })
        .collect();
    let points = scored?.into_iter().filter(|(_, m)| *m > 0).collect();
    Ok(CycleA { points, degree, expected_degree: expected, derivatives: ders, a })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord<E> {
    pub point: Vec<E>,
    pub mult_gamma: u32,
    pub mult_a: u32,
    pub threshold: f64,
    /// Smooth on a component with `n_j > D/(2k)`: the inequality is not claimed.
    pub excluded: bool,
    pub holds: bool,
}

/// Checks `mult_P A > D^2 / 8k^2` at every rational point with
/// `mult_P Gamma > D/k`.
pub fn claim_audit<F: FiniteField>(
    ring: &PolyRing<F>,
    cycle: &FactoredCycle<F::Elem>,
    k: f64,
    a: &[F::Elem],
    seed: u64,
) -> Result<(CycleA<F::Elem>, Vec<ClaimRecord<F::Elem>>)>
where
    F::Elem: Serialize,
{
    let big_a = cycle_a(ring, cycle, a, seed)?;
    let d = cycle.degree() as f64;
    let threshold = d * d / (8.0 * k * k);
    let mut out = Vec::new();
    for p in proj_points_over(ring.base(), 2) {
        let mults: Vec<u32> = cycle.components.iter().map(|(f, _)| mult_proj(ring, f, &p)).collect::<Result<_>>()?;
        let mult_gamma: u32 = mults.iter().zip(&cycle.components).map(|(m, (_, n))| m * n).sum();
        if mult_gamma as f64 <= d / k {
            continue;
        }
        let excluded = mults.iter().zip(&cycle.components).any(|(&m, (_, n))| m == 1 && *n as f64 > d / (2.0 * k));
        let mult_a = big_a.points.iter().find(|(q, _)| *q == p).map_or(0, |(_, m)| *m);
        out.push(ClaimRecord { point: p, mult_gamma, mult_a, threshold, excluded, holds: mult_a as f64 > threshold });
    }
    Ok((big_a, out))
}
