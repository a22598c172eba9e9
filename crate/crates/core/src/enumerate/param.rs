//! The family `x1 x0^(d-1) - x2^d`, whose rational points are exactly
//! `(b^d : a^d : a b^(d-1))` with `gcd(a, b) = 1`, `b` canonical, together
//! with `(0 : 1 : 0)`. The point has height `max(|a|, |b|)^d`.

use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;

use crate::algebra::{EuclideanDomain, MultiPoly, PolyRing, Ring};
use crate::globalfield::{GlobalField, ProjPoint};

pub fn cusp_family_poly<R: Ring>(ring: &PolyRing<R>, d: u32) -> MultiPoly<R::Elem> {
    assert!(d >= 1 && ring.nvars() == 3);
    let b = ring.base();
    ring.from_terms([
        (crate::algebra::Monomial::new(vec![d - 1, 1, 0]), b.one()),
        (crate::algebra::Monomial::new(vec![0, 0, d]), b.neg(&b.one())),
    ])
}

fn parameters<K: GlobalField>(k: &K, d: u32, h: u64) -> Vec<(usize, usize)> {
    let ring = k.ints();
    let vals = k.ints_in_box(h.nth_root(d));
    (0..vals.len())
        .into_par_iter()
        .flat_map_iter(|bi| {
            let b = &vals[bi];
            let keep = !ring.is_zero(b) && ring.is_one(&ring.unit_normal(b).0);
            let vals = &vals;
            (0..vals.len())
                .filter(move |&ai| keep && ring.is_one(&ring.gcd(&vals[ai], b)))
                .map(move |ai| (ai, bi))
        })
        .collect()
}

/// Number of points of height at most `h`.
pub fn count_cusp_family<K: GlobalField>(k: &K, d: u32, h: u64) -> u64 {
    parameters(k, d, h).len() as u64 + 1
}

/// The points themselves, in canonical order.
pub fn cusp_family_points<K: GlobalField>(k: &K, d: u32, h: u64) -> Vec<ProjPoint<<K::Ints as Ring>::Elem>> {
    let ring = k.ints();
    let vals = k.ints_in_box(h.nth_root(d));
    let mut pts: Vec<_> = parameters(k, d, h)
        .into_iter()
        .map(|(ai, bi)| {
            let (a, b) = (&vals[ai], &vals[bi]);
            let coords = vec![
                ring.pow(b, d as u64),
                ring.pow(a, d as u64),
                ring.mul(a, &ring.pow(b, d as u64 - 1)),
            ];
            let height = coords.iter().map(|c| k.abs_inf(c)).max().expect("nonempty");
            ProjPoint { height, coords }
        })
        .collect();
    pts.push(ProjPoint { height: BigUint::from(1u32), coords: vec![ring.zero(), ring.one(), ring.zero()] });
    pts.sort();
    pts
}
