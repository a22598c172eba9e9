use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Runtime tag for a coefficient domain. Moduli are verified prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffDomain {
    Integers,
    Rationals,
    PrimeField(u64),
    /// `Fq[t]`
    PolyRing(u64),
    /// `Fq(t)`
    RationalFunctions(u64),
}

impl CoeffDomain {
    pub fn validated(self) -> Result<Self> {
        match self {
            CoeffDomain::PrimeField(p) | CoeffDomain::PolyRing(p) | CoeffDomain::RationalFunctions(p)
                if !is_prime(p) =>
            {
                Err(Error::NotPrime(p))
            }
            d => Ok(d),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffDomain::Integers | CoeffDomain::PolyRing(_))
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(f, "Z"),
            CoeffDomain::Rationals => write!(f, "Q"),
            CoeffDomain::PrimeField(p) => write!(f, "F{p}"),
            CoeffDomain::PolyRing(q) => write!(f, "Fq[t]:q={q}"),
            CoeffDomain::RationalFunctions(q) => write!(f, "Fq(t):q={q}"),
        }
    }
}

fn parse_q(s: &str) -> Result<u64> {
    s.trim()
        .strip_prefix("q=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Config(format!("expected q=<prime>, got {s:?}")))
}

impl FromStr for CoeffDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let d = match s {
            "Z" | "ZZ" => CoeffDomain::Integers,
            "Q" | "QQ" => CoeffDomain::Rationals,
            _ => {
                if let Some(rest) = s.strip_prefix("Fq(t):") {
                    CoeffDomain::RationalFunctions(parse_q(rest)?)
                } else if let Some(rest) = s.strip_prefix("Fq[t]:") {
                    CoeffDomain::PolyRing(parse_q(rest)?)
                } else if let Some(p) = s.strip_prefix('F').and_then(|p| p.parse().ok()) {
                    CoeffDomain::PrimeField(p)
                } else {
                    return Err(Error::Config(format!("unknown domain {s:?}")));
                }
            }
        };
        d.validated()
    }
}
