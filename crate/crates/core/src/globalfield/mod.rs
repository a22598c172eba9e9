//! Global fields `Q` and `Fq(t)`: places, normalized absolute values,
//! heights, primitive coordinates and reduction of points modulo primes.

mod function_field;
mod rational;

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use function_field::FunctionField;
pub use rational::RationalField;

use crate::algebra::{
    parse_poly, CoeffDomain, EuclideanDomain, Field, FiniteField, IntegralDomain, MultiPoly, PolyRing, PrimeIdealDesc, Ring,
};
use crate::error::{Error, Result};

/// A place of a global field; all supported places have `n_v = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Archimedean,
    Finite(PrimeIdealDesc),
    /// `v_inf` of `Fq(t)`, `|f|_inf = q^deg f`.
    Infinite,
}

impl Place {
    pub fn n_v(&self) -> u32 {
        1
    }
}

/// Descriptor of a global field as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    FunctionField(u64),
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<CoeffDomain>()? {
            CoeffDomain::Rationals | CoeffDomain::Integers => Ok(FieldKind::Rationals),
            CoeffDomain::RationalFunctions(q) | CoeffDomain::PolyRing(q) => Ok(FieldKind::FunctionField(q)),
            CoeffDomain::PrimeField(p) => {
                Err(Error::Unsupported(format!("F{p} is not a global field")))
            }
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::FunctionField(q) => write!(f, "Fq(t):q={q}"),
        }
    }
}

/// Number fields other than `Q` are not implemented; this is the entry point
/// that rejects them.
pub fn number_field(defining_poly: &str) -> Result<()> {
    Err(Error::Unsupported(format!(
        "number field defined by {defining_poly}: only Q and Fq(t) are supported"
    )))
}

pub trait GlobalField: Clone + Debug + Send + Sync + 'static {
    /// The ring of integers `O_K`.
    type Ints: EuclideanDomain;
    /// The field `K` itself.
    type Fracs: Field;
    /// Residue fields `O_K / p`.
    type Residue: FiniteField;

    fn kind(&self) -> FieldKind;
    fn ints(&self) -> &Self::Ints;
    fn fracs(&self) -> &Self::Fracs;

    fn d_k(&self) -> u32 {
        1
    }

    /// Below or at this norm, reduction of points is not guaranteed well
    /// defined; a warning is logged.
    fn norm_floor(&self) -> u64;

    fn ints_domain(&self) -> CoeffDomain;

    fn to_frac(&self, x: &<Self::Ints as Ring>::Elem) -> <Self::Fracs as Ring>::Elem;

    /// `(num, den)` with `den` canonical and coprime to `num`.
    fn split_frac(
        &self,
        x: &<Self::Fracs as Ring>::Elem,
    ) -> (<Self::Ints as Ring>::Elem, <Self::Ints as Ring>::Elem);

    /// `|x|_inf` on `O_K`: the usual absolute value, or `q^deg x`; 0 at 0.
    fn abs_inf(&self, x: &<Self::Ints as Ring>::Elem) -> BigUint;

    fn abs_value(&self, x: &<Self::Fracs as Ring>::Elem, v: &Place) -> Result<BigRational>;

    /// The places where `|x|_v` may differ from 1.
    fn support(&self, x: &<Self::Fracs as Ring>::Elem) -> Vec<Place>;

    fn residue_field(&self, p: &PrimeIdealDesc) -> Result<Self::Residue>;

    fn reduce(&self, res: &Self::Residue, x: &<Self::Ints as Ring>::Elem) -> <Self::Residue as Ring>::Elem;

    /// `ord_p(x)` for nonzero `x`.
    fn valuation(&self, x: &<Self::Ints as Ring>::Elem, p: &PrimeIdealDesc) -> Result<Option<u64>>;

    /// All `x` in `O_K` with `|x|_inf <= b`, in a fixed order.
    fn ints_in_box(&self, b: u64) -> Vec<<Self::Ints as Ring>::Elem>;

    fn log_abs_inf(&self, x: &<Self::Ints as Ring>::Elem) -> f64 {
        biguint_ln(&self.abs_inf(x))
    }

    fn prime_ideals(&self, lo: f64, hi: f64) -> Result<Vec<PrimeIdealDesc>> {
        crate::algebra::primes_in_range(lo, hi, self.ints_domain())
    }

    fn fmt_int(&self, x: &<Self::Ints as Ring>::Elem) -> String {
        self.ints().fmt_elem(x)
    }

    fn parse_int(&self, s: &str) -> Result<<Self::Ints as Ring>::Elem> {
        let r = PolyRing::new(self.ints().clone(), 0);
        let p = parse_poly(&r, s)?;
        Ok(constant_of(self.ints(), &p))
    }
}

fn constant_of<R: Ring>(ring: &R, p: &MultiPoly<R::Elem>) -> R::Elem {
    p.leading().map_or_else(|| ring.zero(), |(_, c)| c.clone())
}

pub fn biguint_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// A projective point in primitive normal form with its exact height.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<E> {
    pub height: BigUint,
    pub coords: Vec<E>,
}

impl<E> ProjPoint<E> {
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

pub fn abs_value<K: GlobalField>(k: &K, x: &<K::Fracs as Ring>::Elem, v: &Place) -> Result<BigRational> {
    k.abs_value(x, v)
}

/// Exact product of `|x|_v` over every place where it can differ from 1.
pub fn product_formula_check<K: GlobalField>(k: &K, x: &<K::Fracs as Ring>::Elem) -> Result<BigRational> {
    if k.fracs().is_zero(x) {
        return Err(Error::ZeroInput);
    }
    let mut acc = BigRational::one();
    for v in k.support(x) {
        acc *= k.abs_value(x, &v)?;
    }
    Ok(acc)
}

/// Primitive normal form of an integral tuple: divide by the gcd and make
/// the first nonzero coordinate canonical (positive, or monic).
pub fn normalize_ints<K: GlobalField>(k: &K, coords: &[<K::Ints as Ring>::Elem]) -> Result<ProjPoint<<K::Ints as Ring>::Elem>> {
    let r = k.ints();
    let first = coords.iter().find(|c| !r.is_zero(c)).ok_or(Error::AllZero)?;
    let g = coords.iter().fold(r.zero(), |g, c| r.gcd(&g, c));
    let (u, _) = r.unit_normal(first);
    let scale = r.mul(&g, &u);
    let coords: Vec<_> = coords
        .iter()
        .map(|c| r.exact_div(c, &scale).expect("gcd divides every coordinate"))
        .collect();
    let height = coords.iter().map(|c| k.abs_inf(c)).max().expect("nonempty");
    Ok(ProjPoint { height, coords })
}

pub fn primitive_normalize<K: GlobalField>(
    k: &K,
    raw: &[<K::Fracs as Ring>::Elem],
) -> Result<ProjPoint<<K::Ints as Ring>::Elem>> {
    let r = k.ints();
    let parts: Vec<_> = raw.iter().map(|x| k.split_frac(x)).collect();
    let lcm = parts.iter().fold(r.one(), |l, (_, d)| {
        let g = r.gcd(&l, d);
        r.exact_div(&r.mul(&l, d), &g).expect("gcd divides")
    });
    let ints: Vec<_> = parts
        .iter()
        .map(|(n, d)| r.mul(n, &r.exact_div(&lcm, d).expect("denominator divides lcm")))
        .collect();
    normalize_ints(k, &ints)
}

/// `H(x) = prod_v max_i |x_i|_v`, computed on the primitive representative.
pub fn height_proj<K: GlobalField>(k: &K, raw: &[<K::Fracs as Ring>::Elem]) -> Result<BigUint> {
    Ok(primitive_normalize(k, raw)?.height)
}

pub fn in_box<K: GlobalField>(k: &K, x: &<K::Ints as Ring>::Elem, b: f64) -> bool {
    k.abs_inf(x).to_f64().expect("finite") <= b
}

/// Coordinate-wise reduction of the primitive representative.
pub fn reduce_point_mod_p<K: GlobalField>(
    k: &K,
    point: &ProjPoint<<K::Ints as Ring>::Elem>,
    p: &PrimeIdealDesc,
) -> Result<Vec<<K::Residue as Ring>::Elem>> {
    if p.norm <= k.norm_floor() {
        log::warn!("reduction modulo {} at or below the norm floor {}", p.label(), k.norm_floor());
    }
    let res = k.residue_field(p)?;
    let out: Vec<_> = point.coords.iter().map(|c| k.reduce(&res, c)).collect();
    if out.iter().all(|c| res.is_zero(c)) {
        return Err(Error::AllCoordinatesVanish(p.label()));
    }
    Ok(out)
}

/// Scale a residue-field point so its first nonzero coordinate is 1.
pub fn normalize_residue_point<F: Field>(f: &F, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let first = coords.iter().find(|c| !f.is_zero(c)).ok_or(Error::AllZero)?;
    let inv = f.inv(first).expect("nonzero");
    Ok(coords.iter().map(|c| f.mul(c, &inv)).collect())
}

/// Reduce the coefficients of an integral polynomial into a residue field.
pub fn reduce_poly<K: GlobalField>(
    k: &K,
    res: &K::Residue,
    f: &MultiPoly<<K::Ints as Ring>::Elem>,
) -> MultiPoly<<K::Residue as Ring>::Elem> {
    let src = PolyRing::new(k.ints().clone(), f.nvars());
    let dst = PolyRing::new(res.clone(), f.nvars());
    src.map_coeffs(f, &dst, |c| k.reduce(res, c))
}
