//! Exact arithmetic: integers, rationals, prime fields, `Fq[t]` and `Fq(t)`,
//! sparse multivariate polynomials, dense matrices and prime enumeration.

pub mod domain;
pub mod fq_poly;
pub mod integers;
pub mod matrix;
pub mod multipoly;
pub mod parse;
pub mod prime_field;
pub mod primes;
pub mod ring;

pub use domain::CoeffDomain;
pub use fq_poly::{ExtField, FqPoly, FqPolyRing, RatFunc, RationalFunctions};
pub use integers::{Integers, Rationals};
pub use matrix::{det_exact, det_int, det_modular, kernel_basis, rank, Matrix};
pub use multipoly::{monomials_of_degree, Monomial, MultiPoly, PolyRing};
pub use parse::parse_poly;
pub use prime_field::PrimeField;
pub use primes::{chebyshev_theta, primes_in_range, PrimeGenerator, PrimeIdealDesc};
pub use ring::{EuclideanDomain, Field, FiniteField, IntegralDomain, Ring};
