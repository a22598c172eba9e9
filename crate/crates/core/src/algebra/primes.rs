//! Prime enumeration for `Z` and `Fq[t]`, and the Chebyshev function.

use serde::{Deserialize, Serialize};

use super::domain::CoeffDomain;
use super::fq_poly::{FqPoly, FqPolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `p <= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeGenerator {
    Integer(u64),
    /// Monic irreducible over `Fq`, coefficients lowest degree first.
    Poly { q: u64, coeffs: Vec<u64> },
}

/// A nonzero prime ideal of `Z` or `Fq[t]` with its absolute norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeIdealDesc {
    pub norm: u64,
    pub generator: PrimeGenerator,
}

impl PrimeIdealDesc {
    pub fn integer(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeIdealDesc { norm: p, generator: PrimeGenerator::Integer(p) })
    }

    pub fn poly(ring: &FqPolyRing, pi: &FqPoly) -> Result<Self> {
        let pi = ring.monic(pi);
        if !ring.is_irreducible(&pi) {
            return Err(Error::NotIrreducible(ring.fmt_elem(&pi)));
        }
        let deg = pi.degree().expect("irreducible is nonconstant") as u32;
        Ok(PrimeIdealDesc {
            norm: ring.q().pow(deg),
            generator: PrimeGenerator::Poly { q: ring.q(), coeffs: pi.coeffs().to_vec() },
        })
    }

    pub fn as_integer(&self) -> Option<u64> {
        match self.generator {
            PrimeGenerator::Integer(p) => Some(p),
            PrimeGenerator::Poly { .. } => None,
        }
    }

    pub fn as_poly(&self) -> Option<FqPoly> {
        match &self.generator {
            PrimeGenerator::Integer(_) => None,
            PrimeGenerator::Poly { coeffs, .. } => Some(FqPoly::from_coeffs(coeffs.clone())),
        }
    }

    pub fn label(&self) -> String {
        match &self.generator {
            PrimeGenerator::Integer(p) => p.to_string(),
            PrimeGenerator::Poly { q, coeffs } => {
                let r = FqPolyRing::new(*q).expect("validated at construction");
                r.fmt_elem(&FqPoly::from_coeffs(coeffs.clone()))
            }
        }
    }
}

/// All prime ideals with `lo < norm < hi`, sorted by norm then generator.
pub fn primes_in_range(lo: f64, hi: f64, domain: CoeffDomain) -> Result<Vec<PrimeIdealDesc>> {
    if !(lo < hi) {
        return Ok(Vec::new());
    }
    match domain {
        CoeffDomain::Integers | CoeffDomain::Rationals => {
            let top = hi.ceil() as u64;
            Ok(primes_up_to(top)
                .into_iter()
                .filter(|&p| (p as f64) > lo && (p as f64) < hi)
                .map(|p| PrimeIdealDesc { norm: p, generator: PrimeGenerator::Integer(p) })
                .collect())
        }
        CoeffDomain::PolyRing(q) | CoeffDomain::RationalFunctions(q) => {
            let ring = FqPolyRing::new(q)?;
            let mut out = Vec::new();
            let mut k = 1u32;
            loop {
                let norm = match q.checked_pow(k) {
                    Some(n) => n,
                    None => break,
                };
                if norm as f64 >= hi {
                    break;
                }
                if norm as f64 > lo {
                    for pi in ring.monic_irreducibles(k as usize) {
                        out.push(PrimeIdealDesc {
                            norm,
                            generator: PrimeGenerator::Poly { q, coeffs: pi.coeffs().to_vec() },
                        });
                    }
                }
                k += 1;
            }
            Ok(out)
        }
        CoeffDomain::PrimeField(_) => {
            Err(Error::DomainMismatch("prime ideals are defined for Z and Fq[t]".into()))
        }
    }
}

/// `sum_{N(p) < T} log N(p)`.
pub fn chebyshev_theta(t: f64, domain: CoeffDomain) -> Result<f64> {
    Ok(primes_in_range(1.0, t, domain)?.iter().map(|p| (p.norm as f64).ln()).sum())
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `n` over `Fq`:
/// `(1/n) sum_{d | n} mu(d) q^{n/d}`.
pub fn irreducible_count(q: u64, n: u32) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d as u64) as i128 * (q as i128).pow(n / d);
        }
    }
    (total / n as i128) as u64
}
