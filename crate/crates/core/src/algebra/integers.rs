use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::ring::{EuclideanDomain, Field, IntegralDomain, Ring};

/// The ring of rational integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn sample(&self, rng: &mut dyn RngCore) -> BigInt {
        BigInt::from(rng.gen_range(-9i64..=9))
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn split_sign(&self, a: &BigInt) -> (bool, BigInt) {
        if a.is_negative() {
            (true, -a)
        } else {
            (false, a.clone())
        }
    }
}

impl IntegralDomain for Integers {
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

impl EuclideanDomain for Integers {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn unit_normal(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-BigInt::one(), -a)
        } else {
            (BigInt::one(), a.clone())
        }
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        Integer::gcd(a, b)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=5);
        BigRational::new(n.into(), d.into())
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn split_sign(&self, a: &BigRational) -> (bool, BigRational) {
        if a.is_negative() {
            (true, -a)
        } else {
            (false, a.clone())
        }
    }
    fn needs_parens(&self, a: &BigRational) -> bool {
        !a.is_integer()
    }
}

impl IntegralDomain for Rationals {
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        self.div(a, b)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation_int(a: &BigInt, p: u64) -> Option<u64> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Deterministic trial-division factorization of `|n|`, `n != 0`.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let two = BigInt::from(2u32);
    let mut d = two.clone();
    while &d * &d <= m {
        if let (Some(small), Some(start)) = (m.to_u64(), d.to_u64()) {
            out.extend(factor_u64(small, start).into_iter().map(|(p, e)| (BigInt::from(p), e)));
            return out;
        }
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == two { BigInt::one() } else { two.clone() };
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// Trial division of `m` by candidates from `d` on (2, then odd numbers).
fn factor_u64(mut m: u64, mut d: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while (d as u128) * (d as u128) <= m as u128 {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}
