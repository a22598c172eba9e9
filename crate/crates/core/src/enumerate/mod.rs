//! Bounded-height point enumeration: projective space, plane curves and
//! affine hypersurfaces, each with a sieved parallel fast path and a
//! single-threaded brute-force oracle.

mod affine;
mod param;
mod proj;
mod sieve;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use affine::{enum_affine_hypersurface, enum_affine_oracle, AffineStrategy};
pub use param::{count_cusp_family, cusp_family_points, cusp_family_poly};
pub use proj::{enum_curve_points_oracle, enum_curve_points_proj, enum_proj_points, enum_proj_points_oracle, enum_proj_zeros};
pub use sieve::ResidueSieve;

use crate::algebra::{MultiPoly, PrimeIdealDesc, Ring};
use crate::error::{Error, Result};
use crate::globalfield::{GlobalField, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    Projective(usize),
    Affine(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    CountOnly,
    Collect,
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    pub mode: Mode,
    /// `None` selects a default set of small primes; `Some(vec![])` disables sieving.
    pub sieve: Option<Vec<PrimeIdealDesc>>,
    /// Cap on the number of candidate tuples examined.
    pub budget: Option<u64>,
}

impl EnumOptions {
    pub fn collect() -> Self {
        EnumOptions { mode: Mode::Collect, ..Default::default() }
    }

    pub fn with_sieve(mut self, primes: Vec<PrimeIdealDesc>) -> Self {
        self.sieve = Some(primes);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }
}

#[derive(Clone, Debug)]
pub struct PointSetResult<P> {
    pub count: u64,
    pub points: Option<Vec<P>>,
    pub elapsed: Duration,
    pub sieve_rejections: u64,
}

pub type ProjResult<K> = PointSetResult<ProjPoint<<<K as GlobalField>::Ints as Ring>::Elem>>;
pub type AffineResult<K> = PointSetResult<Vec<<<K as GlobalField>::Ints as Ring>::Elem>>;

/// A full enumeration request.
#[derive(Clone, Debug)]
pub struct PointQuery<K: GlobalField> {
    pub field: K,
    pub ambient: Ambient,
    pub f: Option<MultiPoly<<K::Ints as Ring>::Elem>>,
    pub bound: u64,
    pub options: EnumOptions,
}

#[derive(Clone, Debug)]
pub enum QueryOutcome<K: GlobalField> {
    Projective(ProjResult<K>),
    Affine(AffineResult<K>),
}

impl<K: GlobalField> QueryOutcome<K> {
    pub fn count(&self) -> u64 {
        match self {
            QueryOutcome::Projective(r) => r.count,
            QueryOutcome::Affine(r) => r.count,
        }
    }
}

impl<K: GlobalField> PointQuery<K> {
    pub fn validate(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::Precondition("bound must be at least 1".into()));
        }
        let (nvars, projective) = match self.ambient {
            Ambient::Projective(n) => (n + 1, true),
            Ambient::Affine(n) => (n, false),
        };
        if let Some(f) = &self.f {
            if f.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial in {} variables, ambient needs {nvars}",
                    f.nvars()
                )));
            }
            if projective && !f.is_homogeneous() {
                return Err(Error::Precondition("projective constraint must be homogeneous".into()));
            }
        }
        Ok(())
    }

    pub fn run(&self) -> Result<QueryOutcome<K>> {
        self.validate()?;
        match (self.ambient, &self.f) {
            (Ambient::Projective(n), None) => {
                enum_proj_points(&self.field, n, self.bound, &self.options).map(QueryOutcome::Projective)
            }
            (Ambient::Projective(_), Some(f)) => {
                enum_proj_zeros(&self.field, f, self.bound, &self.options).map(QueryOutcome::Projective)
            }
            (Ambient::Affine(_), Some(f)) => {
                enum_affine_hypersurface(&self.field, f, self.bound, &self.options).map(QueryOutcome::Affine)
            }
            (Ambient::Affine(n), None) => Err(Error::Unsupported(format!(
                "affine space A^{n} without a constraint is a box, not a point count"
            ))),
        }
    }
}

/// Schwartz-Zippel style estimate `c d (d-1) H^(n-2)`.
pub fn sz_bound(d: u32, n: u32, h: f64, c: f64) -> f64 {
    c * d as f64 * (d as f64 - 1.0) * h.powi(n as i32 - 2)
}

pub(crate) fn check_budget(candidates: u128, budget: Option<u64>) -> Result<()> {
    match budget {
        Some(limit) if candidates > limit as u128 => Err(Error::BudgetExceeded {
            used: candidates.min(u64::MAX as u128) as u64,
            limit,
        }),
        _ => Ok(()),
    }
}

/// Horner evaluation of `sum coeffs[k] x^k`.
pub(crate) fn horner<R: Ring>(ring: &R, coeffs: &[R::Elem], x: &R::Elem) -> R::Elem {
    coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}
