//! Ring objects.
//!
//! Elements are plain data; all arithmetic goes through a ring value that
//! carries the context (modulus, characteristic, number of variables). This
//! keeps elements cheap to hash and compare and lets rings nest, e.g. a
//! polynomial ring over a residue field used as the entry ring of a matrix.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::RngCore;

pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The transcendental `t` of `Fq[t]` / `Fq(t)`, when the ring has one.
    fn generator_t(&self) -> Option<Self::Elem> {
        None
    }

    /// Splits off a printable sign: `(true, -a)` when `a` prints as negative.
    fn split_sign(&self, a: &Self::Elem) -> (bool, Self::Elem) {
        (false, a.clone())
    }

    /// Whether the printed element must be parenthesized as a factor.
    fn needs_parens(&self, _a: &Self::Elem) -> bool {
        false
    }
}

pub trait IntegralDomain: Ring {
    /// `Some(q)` with `a = q*b` when `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

pub trait EuclideanDomain: IntegralDomain {
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// `(u, a/u)` with `u` a unit and `a/u` the canonical associate
    /// (non-negative integer, monic polynomial).
    fn unit_normal(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut x = a.clone();
        let mut y = b.clone();
        while !self.is_zero(&y) {
            let (_, r) = self.div_rem(&x, &y);
            x = y;
            y = r;
        }
        self.unit_normal(&x).1
    }
}

pub trait Field: IntegralDomain {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// A finite field whose elements can be enumerated by index `0..size`.
/// Index 0 is zero and index 1 is one.
pub trait FiniteField: Field {
    fn size(&self) -> u64;
    fn elem_at(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.size()).map(|i| self.elem_at(i)).collect()
    }
}
