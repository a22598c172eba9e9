//! Sparse multivariate polynomials.
//!
//! `MultiPoly<E>` is plain data (an exponent map); arithmetic goes through a
//! `PolyRing<R>`, which is itself a `Ring` so polynomial rings nest and can be
//! used as matrix entry rings (Sylvester resultants).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rand::{Rng, RngCore};

use super::ring::{EuclideanDomain, Field, IntegralDomain, Ring};

/// Exponent vector, ordered by graded reverse lexicographic order with
/// `x0 > x1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.0.len()).rev() {
                if self.0[i] != other.0[i] {
                    return other.0[i].cmp(&self.0[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending monomial order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut vec![0; nvars], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Sparse polynomial: no zero coefficients are stored, the zero polynomial
/// has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> MultiPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Total degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Least total degree of a stored term; `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Leading term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }
}

/// Polynomial ring `R[x0, ..., x{n-1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
    nvars: usize,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, nvars: usize) -> Self {
        PolyRing { base, nvars }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same base ring, different number of variables.
    pub fn with_nvars(&self, nvars: usize) -> PolyRing<R> {
        PolyRing { base: self.base.clone(), nvars }
    }

    pub fn from_terms<I>(&self, terms: I) -> MultiPoly<R::Elem>
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), self.nvars);
            if self.base.is_zero(&c) {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = self.base.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !self.base.is_zero(c)).collect(),
        }
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms([(Monomial::one(self.nvars), c)])
    }

    pub fn var(&self, i: usize) -> MultiPoly<R::Elem> {
        assert!(i < self.nvars, "variable index out of range");
        self.from_terms([(Monomial::var(self.nvars, i), self.base.one())])
    }

    pub fn monomial(&self, exps: Vec<u32>, c: R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms([(Monomial::new(exps), c)])
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(&self, coeffs: &[R::Elem]) -> MultiPoly<R::Elem> {
        self.from_terms(
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(self.nvars, i), c.clone())),
        )
    }

    pub fn scale(&self, f: &MultiPoly<R::Elem>, c: &R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms.iter().map(|(m, a)| (m.clone(), self.base.mul(a, c))))
    }

    pub fn map_coeffs<S: Ring, F>(
        &self,
        f: &MultiPoly<R::Elem>,
        target: &PolyRing<S>,
        map: F,
    ) -> MultiPoly<S::Elem>
    where
        F: Fn(&R::Elem) -> S::Elem,
    {
        assert_eq!(target.nvars, f.nvars);
        target.from_terms(f.terms.iter().map(|(m, c)| (m.clone(), map(c))))
    }

    pub fn eval(&self, f: &MultiPoly<R::Elem>, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), f.nvars, "point dimension");
        let b = &self.base;
        let mut powers: Vec<Vec<R::Elem>> = point.iter().map(|x| vec![b.one(), x.clone()]).collect();
        let mut acc = b.zero();
        for (m, c) in &f.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = b.mul(powers[i].last().expect("nonempty"), &point[i]);
                    powers[i].push(next);
                }
                t = b.mul(&t, &powers[i][e]);
            }
            acc = b.add(&acc, &t);
        }
        acc
    }

    pub fn partial(&self, f: &MultiPoly<R::Elem>, var: usize) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), self.base.mul(c, &self.base.from_i64(k as i64)))
        }))
    }

    /// `f(x + shift)`, expanded by binomial coefficients computed in the
    /// coefficient ring (valid in every characteristic).
    pub fn translate(&self, f: &MultiPoly<R::Elem>, shift: &[R::Elem]) -> MultiPoly<R::Elem> {
        assert_eq!(shift.len(), f.nvars);
        let b = &self.base;
        let mut cur = f.clone();
        for (i, a) in shift.iter().enumerate() {
            if b.is_zero(a) || !cur.uses_var(i) {
                continue;
            }
            let maxe = cur.degree_in(i) as usize;
            let binom = binomial_table(b, maxe);
            let mut apow = vec![b.one()];
            for k in 1..=maxe {
                apow.push(b.mul(&apow[k - 1], a));
            }
            let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
            for (m, c) in &cur.terms {
                let e = m.0[i] as usize;
                for j in 0..=e {
                    let coef = b.mul(c, &b.mul(&binom[e][j], &apow[e - j]));
                    if b.is_zero(&coef) {
                        continue;
                    }
                    let mut ex = m.0.clone();
                    ex[i] = j as u32;
                    let key = Monomial(ex);
                    match acc.get_mut(&key) {
                        Some(v) => *v = b.add(v, &coef),
                        None => {
                            acc.insert(key, coef);
                        }
                    }
                }
            }
            cur = MultiPoly {
                nvars: cur.nvars,
                terms: acc.into_iter().filter(|(_, c)| !b.is_zero(c)).collect(),
            };
        }
        cur
    }

    pub fn homogeneous_part(&self, f: &MultiPoly<R::Elem>, k: u32) -> MultiPoly<R::Elem> {
        MultiPoly {
            nvars: f.nvars,
            terms: f.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Set `x_var = 1` and drop the variable.
    pub fn dehomogenize(&self, f: &MultiPoly<R::Elem>, var: usize) -> MultiPoly<R::Elem> {
        let target = self.with_nvars(f.nvars - 1);
        target.from_terms(f.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.remove(var);
            (Monomial(e), c.clone())
        }))
    }

    /// Homogenize with a new last variable.
    pub fn homogenize(&self, f: &MultiPoly<R::Elem>) -> MultiPoly<R::Elem> {
        let d = f.degree();
        let target = self.with_nvars(f.nvars + 1);
        target.from_terms(f.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            e.push(d - m.degree());
            (Monomial(e), c.clone())
        }))
    }

    /// Rename variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, f: &MultiPoly<R::Elem>, perm: &[usize]) -> MultiPoly<R::Elem> {
        self.from_terms(f.terms.iter().map(|(m, c)| {
            let mut e = vec![0; f.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            (Monomial(e), c.clone())
        }))
    }

    /// `f(images[0], ..., images[n-1])` with the images in `target`.
    pub fn substitute(
        &self,
        f: &MultiPoly<R::Elem>,
        target: &PolyRing<R>,
        images: &[MultiPoly<R::Elem>],
    ) -> MultiPoly<R::Elem> {
        assert_eq!(images.len(), f.nvars);
        let mut powers: Vec<Vec<MultiPoly<R::Elem>>> =
            images.iter().map(|g| vec![target.one(), g.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &f.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = target.mul(powers[i].last().expect("nonempty"), &images[i]);
                    powers[i].push(next);
                }
                t = target.mul(&t, &powers[i][e]);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Coefficients of `x_var^k` for `k = 0..=deg_var`, as polynomials in the
    /// same ring not involving `x_var`.
    pub fn coeffs_in_var(&self, f: &MultiPoly<R::Elem>, var: usize) -> Vec<MultiPoly<R::Elem>> {
        let d = f.degree_in(var) as usize;
        let mut out: Vec<Vec<(Monomial, R::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &f.terms {
            let mut e = m.0.clone();
            let k = e[var] as usize;
            e[var] = 0;
            out[k].push((Monomial(e), c.clone()));
        }
        out.into_iter().map(|ts| self.from_terms(ts)).collect()
    }

    pub fn product<'a, I>(&self, factors: I) -> MultiPoly<R::Elem>
    where
        I: IntoIterator<Item = &'a MultiPoly<R::Elem>>,
        R::Elem: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, g| self.mul(&acc, g))
    }
}

impl<R: EuclideanDomain> PolyRing<R> {
    /// Normalized gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self, f: &MultiPoly<R::Elem>) -> R::Elem {
        f.terms.values().fold(self.base.zero(), |g, c| self.base.gcd(&g, c))
    }

    /// `f / content(f)`, scaled so the leading coefficient is canonical.
    pub fn primitive_part(&self, f: &MultiPoly<R::Elem>) -> MultiPoly<R::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let c = self.content(f);
        let (_, lc) = f.leading().expect("nonzero");
        let (u, _) = self.base.unit_normal(lc);
        let c = self.base.mul(&c, &u);
        self.from_terms(
            f.terms.iter().map(|(m, a)| (m.clone(), self.base.exact_div(a, &c).expect("content divides"))),
        )
    }
}

impl<R: Field> PolyRing<R> {
    pub fn monic(&self, f: &MultiPoly<R::Elem>) -> MultiPoly<R::Elem> {
        match f.leading() {
            None => f.clone(),
            Some((_, lc)) => self.scale(f, &self.base.inv(lc).expect("nonzero")),
        }
    }
}

/// Binomial coefficients `C(e, j)`, `0 <= j <= e <= n`, as ring elements.
pub fn binomial_table<R: Ring>(ring: &R, n: usize) -> Vec<Vec<R::Elem>> {
    let mut t: Vec<Vec<R::Elem>> = Vec::with_capacity(n + 1);
    for e in 0..=n {
        let mut row = Vec::with_capacity(e + 1);
        for j in 0..=e {
            if j == 0 || j == e {
                row.push(ring.one());
            } else {
                row.push(ring.add(&t[e - 1][j - 1], &t[e - 1][j]));
            }
        }
        t.push(row);
    }
    t
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{i}")),
            e => parts.push(format!("x{i}^{e}")),
        }
    }
    parts.join("*")
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MultiPoly::zero(self.nvars)
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    let s = self.base.add(v, c);
                    if self.base.is_zero(&s) {
                        terms.remove(m);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MultiPoly { nvars: self.nvars, terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MultiPoly {
            nvars: a.nvars,
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.base.neg(c))).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = self.base.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v = self.base.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !self.base.is_zero(c)).collect(),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_bigint(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let nterms = rng.gen_range(0..=4);
        let terms: Vec<_> = (0..nterms)
            .map(|_| {
                let deg = rng.gen_range(0..=2u32);
                let mut e = vec![0u32; self.nvars];
                for _ in 0..deg {
                    if self.nvars > 0 {
                        e[rng.gen_range(0..self.nvars)] += 1;
                    }
                }
                (Monomial(e), self.base.sample(rng))
            })
            .collect();
        self.from_terms(terms)
    }

    fn fmt_elem(&self, f: &Self::Elem) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in f.terms.iter().rev().enumerate() {
            let (negative, abs) = self.base.split_sign(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                let s = self.base.fmt_elem(&abs);
                if self.base.needs_parens(&abs) && idx > 0 {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
            } else if self.base.is_one(&abs) {
                out.push_str(&fmt_monomial(m));
            } else {
                let s = self.base.fmt_elem(&abs);
                if self.base.needs_parens(&abs) {
                    out.push_str(&format!("({s})*{}", fmt_monomial(m)));
                } else {
                    out.push_str(&format!("{s}*{}", fmt_monomial(m)));
                }
            }
        }
        out
    }

    fn generator_t(&self) -> Option<Self::Elem> {
        self.base.generator_t().map(|t| self.constant(t))
    }

    fn needs_parens(&self, a: &Self::Elem) -> bool {
        a.num_terms() > 1
    }
}

impl<R: IntegralDomain> IntegralDomain for PolyRing<R> {
    /// Exact division by repeated leading-term cancellation.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (lm, lc) = b.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = a.clone();
        let mut quot: Vec<(Monomial, R::Elem)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let c = self.base.exact_div(rc, &lc)?;
            let m = lm.quotient_of(rm);
            let t = MultiPoly { nvars: self.nvars, terms: BTreeMap::from([(m.clone(), c.clone())]) };
            rem = self.sub(&rem, &self.mul(&t, b));
            quot.push((m, c));
        }
        Some(self.from_terms(quot))
    }
}
