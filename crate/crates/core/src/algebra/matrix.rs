//! Dense exact matrices: fraction-free determinants, a multi-modular integer
//! determinant, row reduction and null spaces over fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::integers::Integers;
use super::prime_field::PrimeField;
use super::ring::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

pub fn matmul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!("{}x{} * {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(a.get(i, k), b.get(k, j))))
    }))
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.cols != v.len() {
        return Err(Error::DimensionMismatch(format!("{}x{} * {}", a.rows, a.cols, v.len())));
    }
    Ok((0..a.rows)
        .map(|i| a.row(i).iter().zip(v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y))))
        .collect())
}

/// Bareiss fraction-free elimination; every intermediate division is exact.
pub fn det_exact<R: IntegralDomain>(ring: &R, m: &Matrix<R::Elem>) -> Result<R::Elem> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(a.get(k, k)) {
            match (k + 1..n).find(|&i| !ring.is_zero(a.get(i, k))) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(a.get(i, j), &pivot), &ring.mul(&aik, a.get(k, j)));
                let q = ring
                    .exact_div(&num, &prev)
                    .ok_or_else(|| Error::Internal("inexact Bareiss step".into()))?;
                a.set(i, j, q);
            }
            a.set(i, k, ring.zero());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { ring.neg(&d) } else { d })
}

fn det_mod_p(f: &PrimeField, m: &Matrix<u64>) -> u64 {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| *a.get(i, k) != 0) else {
            return 0;
        };
        if piv != k {
            a.swap_rows(piv, k);
            det = f.neg(&det);
        }
        let p = *a.get(k, k);
        det = f.mul(&det, &p);
        let inv = f.inv(&p).expect("nonzero pivot");
        for i in k + 1..n {
            let factor = f.mul(a.get(i, k), &inv);
            if factor == 0 {
                continue;
            }
            for j in k..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Integer determinant by reduction modulo enough word-size primes to exceed
/// twice the Hadamard bound, recombined by the Chinese remainder theorem.
pub fn det_modular(m: &Matrix<BigInt>) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let hadamard_sq: BigInt = (0..n)
        .map(|i| m.row(i).iter().map(|x| x * x).sum::<BigInt>())
        .fold(BigInt::one(), |acc, r| acc * r);
    if hadamard_sq.is_zero() {
        return Ok(BigInt::zero());
    }
    let target = hadamard_sq * 4u32;
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    let mut candidate: u64 = (1 << 31) - 1;
    while &modulus * &modulus <= target {
        while !super::primes::is_prime(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        let f = PrimeField::new(p)?;
        let mp = m.map(|x| f.from_bigint(x));
        let r = det_mod_p(&f, &mp);
        let pb = BigInt::from(p);
        let cur = value.mod_floor(&pb).to_u64().expect("residue");
        let minv = f.inv(&f.from_bigint(&modulus)).expect("coprime moduli");
        let t = f.mul(&f.sub(&r, &cur), &minv);
        value += &modulus * BigInt::from(t);
        modulus *= pb;
    }
    let half = &modulus >> 1u32;
    if value > half {
        value -= &modulus;
    }
    debug_assert!(value.abs() <= half);
    Ok(value)
}

/// Integer determinant, Bareiss path.
pub fn det_int(m: &Matrix<BigInt>) -> Result<BigInt> {
    det_exact(&Integers, m)
}

/// Reduced row echelon form with the pivot in each column taken from the
/// first remaining row with a nonzero entry. Returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(piv, r);
        let inv = field.inv(a.get(r, c)).expect("nonzero pivot");
        for j in c..a.cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || field.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of the right null space, one vector per free column in increasing
/// column order, with a 1 in that free position.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let mut is_pivot = vec![None; m.cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    (0..m.cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        let a = int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        assert_eq!(det_int(&a).unwrap(), BigInt::from(1));
        // cofactor expansion along the first row: 1*(5*5 - 0*0) = 25
        let b = int_matrix(&[&[1, 0, 0], &[1, 5, 0], &[1, 0, 5]]);
        assert_eq!(det_int(&b).unwrap(), BigInt::from(25));
        assert_eq!(det_modular(&b).unwrap(), BigInt::from(25));
        let c = int_matrix(&[&[2, 3, 5], &[7, 11, 13], &[2, 3, 5]]);
        assert_eq!(det_int(&c).unwrap(), BigInt::zero());
        let d = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_int(&d).unwrap(), BigInt::from(-1));
        assert_eq!(det_modular(&d).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn non_square() {
        let a = int_matrix(&[&[1, 2, 3]]);
        assert_eq!(det_int(&a), Err(Error::NotSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn kernels() {
        let f5 = PrimeField::new(5).unwrap();
        let id = Matrix::from_fn(3, 3, |i, j| u64::from(i == j));
        assert!(kernel_basis(&f5, &id).is_empty());
        let row = Matrix::new(1, 3, vec![1u64, 1, 1]).unwrap();
        let k = kernel_basis(&f5, &row);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<u64>() % 5, 0);
        }
        // monomials x0, x1, x2 at (1:0:0) and (0:1:0)
        let ev = Matrix::new(2, 3, vec![1u64, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(kernel_basis(&f5, &ev), vec![vec![0, 0, 1]]);
    }
}
