use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{det_exact, Field, IntegralDomain, Matrix, Monomial, MultiPoly, PolyRing, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Intersection {
    Finite(u32),
    Infinite,
}

impl Intersection {
    pub fn finite(self) -> Option<u32> {
        match self {
            Intersection::Finite(n) => Some(n),
            Intersection::Infinite => None,
        }
    }
}

/// Degree and leading coefficient of `f(x, 0)`, plus its order at `x = 0`.
fn restrict_to_axis<E: Clone>(f: &MultiPoly<E>) -> Option<(u32, E, u32)> {
    let mut top: Option<(u32, E)> = None;
    let mut low = u32::MAX;
    for (m, c) in f.terms() {
        if m.exps()[1] != 0 {
            continue;
        }
        let e = m.exps()[0];
        low = low.min(e);
        if top.as_ref().is_none_or(|(d, _)| e > *d) {
            top = Some((e, c.clone()));
        }
    }
    top.map(|(d, c)| (d, c, low))
}

/// Local intersection number at `p` of two affine plane curves, by the
/// classical reduction: lower the degree of `g(x, 0)` against `f(x, 0)`, and
/// split off a factor `y` whenever one of them vanishes on the axis.
pub fn fulton_intersection_number<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    p: &[F::Elem],
) -> Result<Intersection> {
    if ring.nvars() != 2 || f.nvars() != 2 || g.nvars() != 2 || p.len() != 2 {
        return Err(Error::DimensionMismatch("affine plane curves need 2 variables".into()));
    }
    let origin = Monomial::one(2);
    let y = ring.var(1);
    let mut f = ring.translate(f, p);
    let mut g = ring.translate(g, p);
    // without a common component the local number is at most deg f * deg g
    let cap = f.degree() * g.degree();
    let mut acc = 0u32;
    loop {
        if f.is_zero() || g.is_zero() {
            return Ok(Intersection::Infinite);
        }
        if f.coeff(&origin).is_some() || g.coeff(&origin).is_some() {
            return Ok(Intersection::Finite(acc));
        }
        match (restrict_to_axis(&f), restrict_to_axis(&g)) {
            (None, None) => return Ok(Intersection::Infinite),
            (None, Some(_)) => std::mem::swap(&mut f, &mut g),
            (Some((_, _, ord)), None) => {
                acc += ord;
                if acc > cap {
                    return Ok(Intersection::Infinite);
                }
                g = ring.exact_div(&g, &y).expect("y divides g");
            }
            (Some((r, lf, _)), Some((s, lg, _))) => {
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    continue;
                }
                let shift = ring.monomial(vec![s - r, 0], lg);
                g = ring.sub(&ring.scale(&g, &lf), &ring.mul(&shift, &f));
            }
        }
    }
}

/// Intersection number of projective plane curves at `p`, in the chart of
/// the last nonzero coordinate.
pub fn fulton_intersection_proj<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    p: &[F::Elem],
) -> Result<Intersection> {
    if ring.nvars() != 3 || p.len() != 3 {
        return Err(Error::DimensionMismatch("projective plane curves need 3 variables".into()));
    }
    let b = ring.base();
    let chart = p.iter().rposition(|c| !b.is_zero(c)).ok_or(Error::AllZero)?;
    let inv = b.inv(&p[chart]).expect("nonzero");
    let aff: Vec<_> = (0..3).filter(|&i| i != chart).map(|i| b.mul(&p[i], &inv)).collect();
    let r2 = ring.with_nvars(2);
    fulton_intersection_number(&r2, &ring.dehomogenize(f, chart), &ring.dehomogenize(g, chart), &aff)
}

/// Sylvester resultant with respect to `x_var`, using the actual degrees in
/// that variable. The result lies in the same ring and does not involve `x_var`.
pub fn resultant<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    var: usize,
) -> Result<MultiPoly<F::Elem>> {
    let a = ring.coeffs_in_var(f, var);
    let c = ring.coeffs_in_var(g, var);
    let (m, n) = (a.len() - 1, c.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(ring.one());
    }
    let zero = ring.zero();
    let sylvester = Matrix::from_fn(size, size, |i, j| {
        let (coeffs, shift, deg) = if i < n { (&a, i, m) } else { (&c, i - n, n) };
        // row entries are the coefficients from the highest power down
        if j < shift || j > shift + deg {
            zero.clone()
        } else {
            coeffs[deg - (j - shift)].clone()
        }
    });
    det_exact(ring, &sylvester)
}

const CHANGE_ATTEMPTS: u32 = 64;

/// Total degree over the algebraic closure of the intersection of two
/// projective plane curves: the degree of `Res_{x2}` after a linear change of
/// coordinates moving a non-common point to `(0 : 0 : 1)`. Fails with
/// `NonProperIntersection` when the resultant vanishes.
pub fn resultant_degree<F: Field>(
    ring: &PolyRing<F>,
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    seed: u64,
) -> Result<u32> {
    if ring.nvars() != 3 || !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::Precondition("resultant degree needs plane projective forms".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::NonProperIntersection("zero form".into()));
    }
    if f.is_constant() || g.is_constant() {
        return Ok(0);
    }
    let b = ring.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..CHANGE_ATTEMPTS {
        let (c0, c1) = if attempt == 0 { (b.zero(), b.zero()) } else { (b.sample(&mut rng), b.sample(&mut rng)) };
        let at = [c0.clone(), c1.clone(), b.one()];
        if b.is_zero(&ring.eval(f, &at)) || b.is_zero(&ring.eval(g, &at)) {
            continue;
        }
        let images = [
            ring.add(&ring.var(0), &ring.scale(&ring.var(2), &c0)),
            ring.add(&ring.var(1), &ring.scale(&ring.var(2), &c1)),
            ring.var(2),
        ];
        let fs = ring.substitute(f, ring, &images);
        let gs = ring.substitute(g, ring, &images);
        let r = resultant(ring, &fs, &gs, 2)?;
        if r.is_zero() {
            return Err(Error::NonProperIntersection("the forms share a component".into()));
        }
        if !r.is_homogeneous() {
            return Err(Error::Internal("resultant of forms is not homogeneous".into()));
        }
        return Ok(r.degree());
    }
    Err(Error::Internal("no point off both curves found for the coordinate change".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, PrimeField, Rationals};

    #[test]
    fn local_numbers() {
        let r = PolyRing::new(Rationals, 2);
        let o = [Rationals.zero(), Rationals.zero()];
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let i = |a: &str, b: &str| fulton_intersection_number(&r, &p(a), &p(b), &o).unwrap();
        assert_eq!(i("x", "y"), Intersection::Finite(1));
        assert_eq!(i("y", "y - x^2"), Intersection::Finite(2));
        assert_eq!(i("x", "x^2"), Intersection::Infinite);
        assert_eq!(i("x - 1", "y"), Intersection::Finite(0));
        // cusp against its tangent line and its node partner
        assert_eq!(i("y^2 - x^3", "y"), Intersection::Finite(3));
        assert_eq!(i("y^2 - x^3", "x"), Intersection::Finite(2));
        assert_eq!(i("y^2 - x^3", "y^2 - x^2 - x^3"), Intersection::Finite(4));
        // shared component away from the point does not matter
        assert_eq!(i("x*(x - 1)", "y*(x - 1)"), Intersection::Finite(1));
        // a common component through the point that is not an axis
        assert_eq!(i("(x - y)*(x + y^2)", "(x - y)*(y - 2*x^2)"), Intersection::Infinite);
        assert_eq!(i("x - y", "x - y"), Intersection::Infinite);
    }

    #[test]
    fn bezout_for_lines_and_conics() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, 3);
        let f = parse_poly(&r, "x0*x2 - x1^2").unwrap();
        let g = parse_poly(&r, "x0*x1").unwrap();
        // (0:0:1) with multiplicity 3 and (1:0:0) once
        let total: u32 = super::super::proj_points_over(&f5, 2)
            .iter()
            .map(|p| fulton_intersection_proj(&r, &f, &g, p).unwrap().finite().unwrap())
            .sum();
        assert_eq!(total, 4);
        assert_eq!(resultant_degree(&r, &f, &g, 3).unwrap(), 4);
        assert!(matches!(resultant_degree(&r, &g, &parse_poly(&r, "x0").unwrap(), 3), Err(Error::NonProperIntersection(_))));
    }

    #[test]
    fn resultant_of_univariates() {
        let r = PolyRing::new(Rationals, 1);
        let f = parse_poly(&r, "x0^2 - 1").unwrap();
        let g = parse_poly(&r, "x0 - 2").unwrap();
        // f(2) = 3
        assert_eq!(resultant(&r, &f, &g, 0).unwrap(), r.from_i64(3));
    }
}
