use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{FieldKind, GlobalField, Place};
use crate::algebra::integers::{factor_int, valuation_int};
use crate::algebra::{CoeffDomain, Integers, PrimeField, PrimeIdealDesc, Rationals, Ring};
use crate::error::{Error, Result};

/// `K = Q`, `O_K = Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalField {
    floor: u64,
}

impl Default for RationalField {
    fn default() -> Self {
        RationalField { floor: 1 }
    }
}

impl RationalField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_norm_floor(floor: u64) -> Self {
        RationalField { floor }
    }

    fn prime_of(p: &PrimeIdealDesc) -> Result<u64> {
        p.as_integer()
            .ok_or_else(|| Error::DomainMismatch(format!("{} is not a rational prime", p.label())))
    }
}

impl GlobalField for RationalField {
    type Ints = Integers;
    type Fracs = Rationals;
    type Residue = PrimeField;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn ints(&self) -> &Integers {
        &Integers
    }
    fn fracs(&self) -> &Rationals {
        &Rationals
    }
    fn norm_floor(&self) -> u64 {
        self.floor
    }
    fn ints_domain(&self) -> CoeffDomain {
        CoeffDomain::Integers
    }

    fn to_frac(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }

    fn split_frac(&self, x: &BigRational) -> (BigInt, BigInt) {
        (x.numer().clone(), x.denom().clone())
    }

    fn abs_inf(&self, x: &BigInt) -> BigUint {
        x.magnitude().clone()
    }

    fn abs_value(&self, x: &BigRational, v: &Place) -> Result<BigRational> {
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        match v {
            Place::Archimedean => Ok(x.abs()),
            Place::Finite(p) => {
                let p = Self::prime_of(p)?;
                let up = valuation_int(x.numer(), p).unwrap_or(0);
                let down = valuation_int(x.denom(), p).unwrap_or(0);
                let pb = BigInt::from(p);
                let num = num_traits::pow(pb.clone(), down as usize);
                let den = num_traits::pow(pb, up as usize);
                Ok(BigRational::new(num, den))
            }
            Place::Infinite => Err(Error::DomainMismatch("Q has no function-field place".into())),
        }
    }

    fn support(&self, x: &BigRational) -> Vec<Place> {
        let mut ps: Vec<BigInt> = factor_int(x.numer()).into_iter().map(|(p, _)| p).collect();
        ps.extend(factor_int(x.denom()).into_iter().map(|(p, _)| p));
        ps.sort();
        let mut out = vec![Place::Archimedean];
        for p in ps {
            let p: u64 = p.try_into().expect("small prime");
            out.push(Place::Finite(PrimeIdealDesc::integer(p).expect("prime factor")));
        }
        out
    }

    fn residue_field(&self, p: &PrimeIdealDesc) -> Result<PrimeField> {
        PrimeField::new(Self::prime_of(p)?)
    }

    fn reduce(&self, res: &PrimeField, x: &BigInt) -> u64 {
        res.from_bigint(x)
    }

    fn valuation(&self, x: &BigInt, p: &PrimeIdealDesc) -> Result<Option<u64>> {
        Ok(valuation_int(x, Self::prime_of(p)?))
    }

    fn ints_in_box(&self, b: u64) -> Vec<BigInt> {
        let b = b as i64;
        (-b..=b).map(BigInt::from).collect()
    }
}
