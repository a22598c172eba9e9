use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::{FieldKind, GlobalField, Place};
use crate::algebra::{
    CoeffDomain, ExtField, FqPoly, FqPolyRing, PrimeIdealDesc, RatFunc, RationalFunctions,
};
use crate::error::{Error, Result};

/// `K = Fq(t)` with `q` prime, `O_K = Fq[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionField {
    ring: FqPolyRing,
    fracs: RationalFunctions,
    floor: u64,
}

impl FunctionField {
    pub fn new(q: u64) -> Result<Self> {
        Ok(FunctionField { ring: FqPolyRing::new(q)?, fracs: RationalFunctions::new(q)?, floor: 1 })
    }

    pub fn with_norm_floor(mut self, floor: u64) -> Self {
        self.floor = floor;
        self
    }

    pub fn q(&self) -> u64 {
        self.ring.q()
    }

    fn pi_of(&self, p: &PrimeIdealDesc) -> Result<FqPoly> {
        match &p.generator {
            crate::algebra::PrimeGenerator::Poly { q, coeffs } if *q == self.q() => {
                Ok(FqPoly::from_coeffs(coeffs.clone()))
            }
            _ => Err(Error::DomainMismatch(format!("{} is not a prime of Fq[t] with q={}", p.label(), self.q()))),
        }
    }

    fn q_power(&self, e: i64) -> BigRational {
        let q = BigInt::from(self.q());
        if e >= 0 {
            BigRational::from_integer(num_traits::pow(q, e as usize))
        } else {
            BigRational::new(BigInt::from(1), num_traits::pow(q, (-e) as usize))
        }
    }
}

impl GlobalField for FunctionField {
    type Ints = FqPolyRing;
    type Fracs = RationalFunctions;
    type Residue = ExtField;

    fn kind(&self) -> FieldKind {
        FieldKind::FunctionField(self.q())
    }
    fn ints(&self) -> &FqPolyRing {
        &self.ring
    }
    fn fracs(&self) -> &RationalFunctions {
        &self.fracs
    }
    fn norm_floor(&self) -> u64 {
        self.floor
    }
    fn ints_domain(&self) -> CoeffDomain {
        CoeffDomain::PolyRing(self.q())
    }

    fn to_frac(&self, x: &FqPoly) -> RatFunc {
        self.fracs.from_poly(x)
    }

    fn split_frac(&self, x: &RatFunc) -> (FqPoly, FqPoly) {
        (x.num.clone(), x.den.clone())
    }

    fn abs_inf(&self, x: &FqPoly) -> BigUint {
        match x.degree() {
            None => BigUint::zero(),
            Some(d) => num_traits::pow(BigUint::from(self.q()), d),
        }
    }

    fn abs_value(&self, x: &RatFunc, v: &Place) -> Result<BigRational> {
        if x.num.is_zero() {
            return Ok(BigRational::zero());
        }
        match v {
            Place::Infinite => {
                let e = x.num.degree().expect("nonzero") as i64 - x.den.degree().expect("nonzero") as i64;
                Ok(self.q_power(e))
            }
            Place::Finite(p) => {
                let pi = self.pi_of(p)?;
                let up = self.ring.valuation(&x.num, &pi).unwrap_or(0) as i64;
                let down = self.ring.valuation(&x.den, &pi).unwrap_or(0) as i64;
                let deg = pi.degree().expect("irreducible") as i64;
                Ok(self.q_power(-(up - down) * deg))
            }
            Place::Archimedean => Err(Error::DomainMismatch("Fq(t) has no archimedean place".into())),
        }
    }

    fn support(&self, x: &RatFunc) -> Vec<Place> {
        let mut pis: Vec<FqPoly> = self.ring.factor(&x.num).1.into_iter().map(|(p, _)| p).collect();
        pis.extend(self.ring.factor(&x.den).1.into_iter().map(|(p, _)| p));
        pis.sort();
        let mut out = vec![Place::Infinite];
        for pi in pis {
            out.push(Place::Finite(PrimeIdealDesc::poly(&self.ring, &pi).expect("irreducible factor")));
        }
        out
    }

    fn residue_field(&self, p: &PrimeIdealDesc) -> Result<ExtField> {
        ExtField::new(self.ring, self.pi_of(p)?)
    }

    fn reduce(&self, res: &ExtField, x: &FqPoly) -> FqPoly {
        res.reduce(x)
    }

    fn valuation(&self, x: &FqPoly, p: &PrimeIdealDesc) -> Result<Option<u64>> {
        Ok(self.ring.valuation(x, &self.pi_of(p)?))
    }

    fn ints_in_box(&self, b: u64) -> Vec<FqPoly> {
        let q = self.q();
        if b == 0 {
            return vec![FqPoly::zero()];
        }
        let mut top = 1u64;
        while top.checked_mul(q).is_some_and(|c| c <= b) {
            top *= q;
        }
        let count = top * q;
        (0..count).map(|i| FqPoly::from_index(q, i)).collect()
    }
}
