//! Univariate polynomials over a prime field `Fq`, the rational function
//! field `Fq(t)`, and residue fields `Fq[t]/(pi)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rand::{Rng, RngCore};

use super::prime_field::PrimeField;
use super::ring::{EuclideanDomain, FiniteField, Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

/// Polynomial in `t` with coefficients in `0..q`, lowest degree first, no
/// trailing zeros. The ordering is by degree, then coefficients from the top,
/// which matches the base-`q` index of the coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FqPoly(Vec<u64>);

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly(Vec::new())
    }

    pub fn from_coeffs(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly(c)
    }

    pub fn constant(c: u64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: u64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Polynomial whose coefficients are the base-`q` digits of `index`.
    pub fn from_index(q: u64, mut index: u64) -> Self {
        let mut c = Vec::new();
        while index > 0 {
            c.push(index % q);
            index /= q;
        }
        FqPoly(c)
    }

    pub fn to_index(&self, q: u64) -> u64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The polynomial ring `Fq[t]`, `q` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqPolyRing {
    fq: PrimeField,
}

impl FqPolyRing {
    pub fn new(q: u64) -> Result<Self> {
        Ok(FqPolyRing { fq: PrimeField::new(q)? })
    }

    pub fn q(&self) -> u64 {
        self.fq.modulus()
    }

    pub fn base(&self) -> &PrimeField {
        &self.fq
    }

    pub fn t(&self) -> FqPoly {
        FqPoly::monomial(1, 1)
    }

    pub fn scale(&self, a: &FqPoly, c: u64) -> FqPoly {
        FqPoly::from_coeffs(a.0.iter().map(|x| self.fq.mul(x, &c)).collect())
    }

    pub fn monic(&self, a: &FqPoly) -> FqPoly {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.fq.inv(&a.leading()).expect("nonzero leading coefficient");
        self.scale(a, inv)
    }

    pub fn eval(&self, a: &FqPoly, x: u64) -> u64 {
        a.0.iter()
            .rev()
            .fold(0, |acc, c| self.fq.add(&self.fq.mul(&acc, &x), c))
    }

    /// Deterministic irreducibility test by exhaustive search for a monic
    /// factor of degree at most `deg/2`.
    pub fn is_irreducible(&self, a: &FqPoly) -> bool {
        let n = match a.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let q = self.q();
        for k in 1..=n / 2 {
            let start = q.pow(k as u32);
            for i in start..2 * start {
                // monic polynomials of degree k have index in [q^k, 2 q^k)
                let g = FqPoly::from_index(q, i);
                if self.div_rem(a, &g).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// All monic polynomials of exact degree `k`, in index order.
    pub fn monics(&self, k: usize) -> impl Iterator<Item = FqPoly> + '_ {
        let q = self.q();
        let start = q.pow(k as u32);
        (start..2 * start).map(move |i| FqPoly::from_index(q, i))
    }

    /// Monic irreducibles of exact degree `k`, found by sieving out products
    /// of lower-degree irreducibles with monic cofactors.
    pub fn monic_irreducibles(&self, k: usize) -> Vec<FqPoly> {
        if k == 0 {
            return Vec::new();
        }
        let q = self.q();
        let base = q.pow(k as u32);
        let mut reducible = vec![false; base as usize];
        for i in 1..=k / 2 {
            for a in self.monic_irreducibles(i) {
                for b in self.monics(k - i) {
                    let prod = self.mul(&a, &b);
                    reducible[(prod.to_index(q) - base) as usize] = true;
                }
            }
        }
        (0..base)
            .filter(|j| !reducible[*j as usize])
            .map(|j| FqPoly::from_index(q, base + j))
            .collect()
    }

    /// Factorization of a nonzero polynomial into monic irreducibles by trial
    /// division, with the leading coefficient returned separately.
    pub fn factor(&self, a: &FqPoly) -> (u64, Vec<(FqPoly, u32)>) {
        assert!(!a.is_zero(), "factor of zero");
        let lc = a.leading();
        let mut m = self.monic(a);
        let mut out = Vec::new();
        let mut k = 1;
        while let Some(deg) = m.degree() {
            if deg == 0 {
                break;
            }
            if 2 * k > deg {
                out.push((m.clone(), 1));
                break;
            }
            for g in self.monic_irreducibles(k) {
                let mut e = 0;
                loop {
                    let (qq, r) = self.div_rem(&m, &g);
                    if !r.is_zero() {
                        break;
                    }
                    m = qq;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            k += 1;
        }
        out.sort();
        (lc, out)
    }

    /// Order of `pi` dividing `a`; `None` for zero.
    pub fn valuation(&self, a: &FqPoly, pi: &FqPoly) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut x = a.clone();
        let mut v = 0;
        loop {
            let (qq, r) = self.div_rem(&x, pi);
            if !r.is_zero() {
                return Some(v);
            }
            x = qq;
            v += 1;
        }
    }

    /// Extended Euclid: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), FqPoly::zero());
        let (mut t0, mut t1) = (FqPoly::zero(), self.one());
        while !r1.is_zero() {
            let (qq, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&qq, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&qq, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.fq.inv(&r0.leading()).expect("nonzero");
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }
}

fn fmt_fq_poly(a: &FqPoly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, &c) in a.0.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let s = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}*t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}*t^{k}"),
        };
        parts.push(s);
    }
    parts.join(" + ")
}

impl Ring for FqPolyRing {
    type Elem = FqPoly;

    fn zero(&self) -> FqPoly {
        FqPoly::zero()
    }
    fn one(&self) -> FqPoly {
        FqPoly::constant(1)
    }
    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.0.len().max(b.0.len());
        FqPoly::from_coeffs((0..n).map(|i| self.fq.add(&a.coeff(i), &b.coeff(i))).collect())
    }
    fn neg(&self, a: &FqPoly) -> FqPoly {
        FqPoly(a.0.iter().map(|c| self.fq.neg(c)).collect())
    }
    fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.0.len().max(b.0.len());
        FqPoly::from_coeffs((0..n).map(|i| self.fq.sub(&a.coeff(i), &b.coeff(i))).collect())
    }
    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = self.fq.add(&out[i + j], &self.fq.mul(x, y));
            }
        }
        FqPoly::from_coeffs(out)
    }
    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> FqPoly {
        FqPoly::constant(self.fq.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.q()
    }
    fn sample(&self, rng: &mut dyn RngCore) -> FqPoly {
        let deg = rng.gen_range(0..=3);
        FqPoly::from_coeffs((0..=deg).map(|_| rng.gen_range(0..self.q())).collect())
    }
    fn fmt_elem(&self, a: &FqPoly) -> String {
        fmt_fq_poly(a)
    }
    fn generator_t(&self) -> Option<FqPoly> {
        Some(self.t())
    }
    fn needs_parens(&self, a: &FqPoly) -> bool {
        a.0.iter().filter(|c| **c != 0).count() > 1
    }
}

impl IntegralDomain for FqPolyRing {
    fn exact_div(&self, a: &FqPoly, b: &FqPoly) -> Option<FqPoly> {
        if b.is_zero() {
            return None;
        }
        let (qq, r) = self.div_rem(a, b);
        r.is_zero().then_some(qq)
    }
}

impl EuclideanDomain for FqPolyRing {
    fn div_rem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.fq.inv(&b.leading()).expect("nonzero leading coefficient");
        let mut r = a.0.clone();
        if r.len() <= db {
            return (FqPoly::zero(), a.clone());
        }
        let mut qv = vec![0u64; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.fq.mul(&r[i], &inv);
            if c == 0 {
                continue;
            }
            qv[i - db] = c;
            for (j, bc) in b.0.iter().enumerate() {
                let k = i - db + j;
                r[k] = self.fq.sub(&r[k], &self.fq.mul(&c, bc));
            }
        }
        (FqPoly::from_coeffs(qv), FqPoly::from_coeffs(r))
    }

    fn unit_normal(&self, a: &FqPoly) -> (FqPoly, FqPoly) {
        if a.is_zero() {
            return (self.one(), a.clone());
        }
        (FqPoly::constant(a.leading()), self.monic(a))
    }
}

/// Element `num/den` of `Fq(t)` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    pub num: FqPoly,
    pub den: FqPoly,
}

/// The rational function field `Fq(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctions {
    ring: FqPolyRing,
}

impl RationalFunctions {
    pub fn new(q: u64) -> Result<Self> {
        Ok(RationalFunctions { ring: FqPolyRing::new(q)? })
    }

    pub fn poly_ring(&self) -> &FqPolyRing {
        &self.ring
    }

    pub fn q(&self) -> u64 {
        self.ring.q()
    }

    /// Reduced fraction; panics on zero denominator.
    pub fn make(&self, num: &FqPoly, den: &FqPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num: FqPoly::zero(), den: self.ring.one() };
        }
        let g = self.ring.gcd(num, den);
        let n = self.ring.exact_div(num, &g).expect("gcd divides");
        let d = self.ring.exact_div(den, &g).expect("gcd divides");
        let lc = d.leading();
        let inv = self.ring.base().inv(&lc).expect("nonzero");
        RatFunc { num: self.ring.scale(&n, inv), den: self.ring.scale(&d, inv) }
    }

    pub fn from_poly(&self, a: &FqPoly) -> RatFunc {
        RatFunc { num: a.clone(), den: self.ring.one() }
    }
}

impl Ring for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        self.from_poly(&FqPoly::zero())
    }
    fn one(&self) -> RatFunc {
        self.from_poly(&self.ring.one())
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.make(&num, &r.mul(&a.den, &b.den))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.ring.neg(&a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let r = &self.ring;
        self.make(&r.mul(&a.num, &b.num), &r.mul(&a.den, &b.den))
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        self.from_poly(&self.ring.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.q()
    }
    fn sample(&self, rng: &mut dyn RngCore) -> RatFunc {
        let num = self.ring.sample(rng);
        let mut den = self.ring.sample(rng);
        if den.is_zero() {
            den = self.ring.one();
        }
        self.make(&num, &den)
    }
    fn fmt_elem(&self, a: &RatFunc) -> String {
        if self.ring.is_one(&a.den) {
            fmt_fq_poly(&a.num)
        } else {
            format!("({})/({})", fmt_fq_poly(&a.num), fmt_fq_poly(&a.den))
        }
    }
    fn generator_t(&self) -> Option<RatFunc> {
        Some(self.from_poly(&self.ring.t()))
    }
    fn needs_parens(&self, a: &RatFunc) -> bool {
        !self.ring.is_one(&a.den) || self.ring.needs_parens(&a.num)
    }
}

impl IntegralDomain for RationalFunctions {
    fn exact_div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        self.div(a, b)
    }
}

impl Field for RationalFunctions {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        (!a.num.is_zero()).then(|| self.make(&a.den, &a.num))
    }
}

/// The residue field `Fq[t]/(pi)` for a monic irreducible `pi`, of size
/// `q^deg(pi)`. Elements are reduced polynomials of degree `< deg(pi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    ring: FqPolyRing,
    modulus: FqPoly,
    degree: usize,
}

impl ExtField {
    pub fn new(ring: FqPolyRing, modulus: FqPoly) -> Result<Self> {
        let m = ring.monic(&modulus);
        if !ring.is_irreducible(&m) {
            return Err(Error::NotIrreducible(ring.fmt_elem(&m)));
        }
        let degree = m.degree().expect("irreducible is nonconstant");
        Ok(ExtField { ring, modulus: m, degree })
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn reduce(&self, a: &FqPoly) -> FqPoly {
        self.ring.div_rem(a, &self.modulus).1
    }
}

impl Ring for ExtField {
    type Elem = FqPoly;

    fn zero(&self) -> FqPoly {
        FqPoly::zero()
    }
    fn one(&self) -> FqPoly {
        FqPoly::constant(1)
    }
    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.ring.add(a, b)
    }
    fn neg(&self, a: &FqPoly) -> FqPoly {
        self.ring.neg(a)
    }
    fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.reduce(&self.ring.mul(a, b))
    }
    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_zero()
    }
    fn from_bigint(&self, n: &BigInt) -> FqPoly {
        self.ring.from_bigint(n)
    }
    fn characteristic(&self) -> u64 {
        self.ring.q()
    }
    fn sample(&self, rng: &mut dyn RngCore) -> FqPoly {
        self.elem_at(rng.gen_range(0..self.size()))
    }
    fn fmt_elem(&self, a: &FqPoly) -> String {
        fmt_fq_poly(a)
    }
    fn generator_t(&self) -> Option<FqPoly> {
        Some(self.reduce(&self.ring.t()))
    }
    fn needs_parens(&self, a: &FqPoly) -> bool {
        self.ring.needs_parens(a)
    }
}

impl IntegralDomain for ExtField {
    fn exact_div(&self, a: &FqPoly, b: &FqPoly) -> Option<FqPoly> {
        self.div(a, b)
    }
}

impl Field for ExtField {
    fn inv(&self, a: &FqPoly) -> Option<FqPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.ring.xgcd(a, &self.modulus);
        debug_assert!(self.ring.is_one(&g));
        Some(self.reduce(&s))
    }
}

impl FiniteField for ExtField {
    fn size(&self) -> u64 {
        self.ring.q().pow(self.degree as u32)
    }
    fn elem_at(&self, index: u64) -> FqPoly {
        FqPoly::from_index(self.ring.q(), index)
    }
    fn index_of(&self, a: &FqPoly) -> u64 {
        a.to_index(self.ring.q())
    }
}
