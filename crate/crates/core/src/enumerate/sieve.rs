use crate::algebra::{FiniteField, MultiPoly, PolyRing, PrimeIdealDesc, Ring};
use crate::error::Result;
use crate::globalfield::{reduce_poly, GlobalField};

const MAX_TABLE: u64 = 1 << 20;

struct Table {
    /// `zero[i]` iff `f_p` vanishes at the residue tuple with mixed-radix index `i`.
    zero: Vec<bool>,
    size: u64,
    /// Residue index of each candidate coordinate value.
    residue_of: Vec<u64>,
}

/// Zero tables of `f mod p` over the candidate coordinate list. A tuple
/// whose reduction is not a zero of some `f_p` cannot be a zero of `f`.
pub struct ResidueSieve {
    tables: Vec<Table>,
}

impl ResidueSieve {
    pub fn build<K: GlobalField>(
        k: &K,
        f: &MultiPoly<<K::Ints as Ring>::Elem>,
        primes: &[PrimeIdealDesc],
        values: &[<K::Ints as Ring>::Elem],
    ) -> Result<Self> {
        let n = f.nvars() as u32;
        let mut tables = Vec::new();
        for p in primes {
            let res = k.residue_field(p)?;
            let size = res.size();
            if size.checked_pow(n).is_none_or(|t| t > MAX_TABLE) {
                log::debug!("sieve prime {} skipped: table too large", p.label());
                continue;
            }
            let fp = reduce_poly(k, &res, f);
            if fp.is_zero() {
                continue;
            }
            let ring = PolyRing::new(res.clone(), f.nvars());
            let total = size.pow(n);
            let mut zero = Vec::with_capacity(total as usize);
            let mut pt = vec![res.zero(); f.nvars()];
            for idx in 0..total {
                let mut rest = idx;
                for c in pt.iter_mut() {
                    *c = res.elem_at(rest % size);
                    rest /= size;
                }
                zero.push(res.is_zero(&ring.eval(&fp, &pt)));
            }
            let residue_of = values.iter().map(|v| res.index_of(&k.reduce(&res, v))).collect();
            tables.push(Table { zero, size, residue_of });
        }
        Ok(ResidueSieve { tables })
    }

    pub fn empty() -> Self {
        ResidueSieve { tables: Vec::new() }
    }

    pub fn num_primes(&self) -> usize {
        self.tables.len()
    }

    /// `positions[i]` indexes the candidate value list given to `build`.
    pub fn passes(&self, positions: &[usize]) -> bool {
        self.tables.iter().all(|t| {
            let mut idx = 0u64;
            let mut radix = 1u64;
            for &p in positions {
                idx += t.residue_of[p] * radix;
                radix *= t.size;
            }
            t.zero[idx as usize]
        })
    }
}

/// Small primes used when the caller does not choose a sieve.
pub(crate) fn default_sieve_primes<K: GlobalField>(k: &K, nvars: usize) -> Vec<PrimeIdealDesc> {
    let limit = (1u64 << 16) as f64;
    k.prime_ideals(1.0, 64.0)
        .unwrap_or_default()
        .into_iter()
        .filter(|p| (p.norm as f64).powi(nvars as i32) <= limit)
        .rev()
        .take(3)
        .collect()
}
