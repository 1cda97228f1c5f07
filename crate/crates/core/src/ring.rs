//! Commutative-ring and Euclidean-domain abstractions with dense matrices
//! and division-free determinant/adjugate routines.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{big, CoeffRing, Scalar};

/// A ring given as a context object; elements carry no ring data of their
/// own as far as this trait is concerned.
pub trait Ring {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn embed_int(&self, n: i64) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        if n < 0 { self.neg(&acc) } else { acc }
    }

    fn eq_elem(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

/// A Euclidean domain. `size` is the Euclidean function; `div_rem(a, b)`
/// returns `(q, r)` with `a = q b + r` and `r = 0` or `size(r) < size(b)`.
///
/// `strip` returns the part of `d` that stays a non-unit after localizing at
/// the ring's denominator set (identity when nothing is inverted).
pub trait Euclidean: Ring {
    fn size(&self, a: &Self::Elem) -> BigInt;
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn unit_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A unit `u` such that `a * u` is the chosen associate of `a`.
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem;
    fn strip(&self, d: &Self::Elem) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.normal_unit(a))
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    /// Whether `d` becomes a unit after localization.
    fn is_local_unit(&self, d: &Self::Elem) -> bool {
        self.is_unit(&self.strip(d))
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("ragged matrix: expected {cols} entries per row")));
        }
        Ok(Mat { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack: {} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack: {} vs {} rows", self.rows, other.rows)));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        }))
    }
}

pub fn zeros<R: Ring>(r: &R, rows: usize, cols: usize) -> Mat<R::Elem> {
    Mat::from_fn(rows, cols, |_, _| r.zero())
}

pub fn identity<R: Ring>(r: &R, n: usize) -> Mat<R::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { r.one() } else { r.zero() })
}

pub fn mat_mul<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Mat::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = r.zero();
        for k in 0..a.cols {
            let x = a.get(i, k);
            if !r.is_zero(x) {
                acc = r.add(&acc, &r.mul(x, b.get(k, j)));
            }
        }
        acc
    }))
}

pub fn mat_add<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::Dimension("cannot add matrices of different shapes".into()));
    }
    Ok(Mat::from_fn(a.rows, a.cols, |i, j| r.add(a.get(i, j), b.get(i, j))))
}

pub fn mat_neg<R: Ring>(r: &R, a: &Mat<R::Elem>) -> Mat<R::Elem> {
    a.map(|x| r.neg(x))
}

pub fn mat_scale<R: Ring>(r: &R, c: &R::Elem, a: &Mat<R::Elem>) -> Mat<R::Elem> {
    a.map(|x| r.mul(c, x))
}

pub fn mat_is_zero<R: Ring>(r: &R, a: &Mat<R::Elem>) -> bool {
    a.data.iter().all(|x| r.is_zero(x))
}

pub fn mat_eq<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> bool {
    a.rows == b.rows && a.cols == b.cols && a.data.iter().zip(&b.data).all(|(x, y)| r.eq_elem(x, y))
}

/// Block diagonal sum.
pub fn block_diag<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    Mat::from_fn(a.rows + b.rows, a.cols + b.cols, |i, j| {
        if i < a.rows && j < a.cols {
            a.get(i, j).clone()
        } else if i >= a.rows && j >= a.cols {
            b.get(i - a.rows, j - a.cols).clone()
        } else {
            r.zero()
        }
    })
}

/// Assembles `[[a, b], [c, d]]`.
pub fn blocks<R: Ring>(
    a: &Mat<R::Elem>,
    b: &Mat<R::Elem>,
    c: &Mat<R::Elem>,
    d: &Mat<R::Elem>,
) -> Result<Mat<R::Elem>> {
    a.hstack(b)?.vstack(&c.hstack(d)?)
}

/// Coefficients of `det(xI - M)` from `x^n` down to the constant term,
/// computed with Berkowitz's division-free recurrence.
pub fn char_poly<R: Ring>(r: &R, m: &Mat<R::Elem>) -> Result<Vec<R::Elem>> {
    if !m.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut v = vec![r.one()];
    for k in 0..n {
        // leading principal k x k block A, column S above the diagonal entry,
        // row Rw to its left, diagonal entry a
        let a = m.get(k, k);
        let mut c = vec![r.one(), r.neg(a)];
        let mut col: Vec<R::Elem> = (0..k).map(|i| m.get(i, k).clone()).collect();
        for _ in 0..k {
            let rs = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(m.get(k, j), &col[j])));
            c.push(r.neg(&rs));
            col = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(m.get(i, j), &col[j]))))
                .collect();
        }
        // Toeplitz product: new[i] = sum_j c[i - j] v[j]
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..k + 2 {
            let mut acc = r.zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < c.len() {
                    acc = r.add(&acc, &r.mul(&c[i - j], vj));
                }
            }
            next.push(acc);
        }
        v = next;
    }
    Ok(v)
}

pub fn det<R: Ring>(r: &R, m: &Mat<R::Elem>) -> Result<R::Elem> {
    let cp = char_poly(r, m)?;
    let c = cp[m.rows].clone();
    Ok(if m.rows % 2 == 1 { r.neg(&c) } else { c })
}

/// Adjugate via Cayley–Hamilton: `adj(M) = (-1)^(n+1) (M^(n-1) + c1 M^(n-2) + ... + c_(n-1) I)`.
pub fn adjugate<R: Ring>(r: &R, m: &Mat<R::Elem>) -> Result<Mat<R::Elem>> {
    let cp = char_poly(r, m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(zeros(r, 0, 0));
    }
    // Horner: B = I; B = B M + c_k I
    let mut b = identity(r, n);
    for ck in cp.iter().take(n).skip(1) {
        b = mat_mul(r, &b, m)?;
        for i in 0..n {
            let v = r.add(b.get(i, i), ck);
            b.set(i, i, v);
        }
    }
    Ok(if n % 2 == 0 { mat_neg(r, &b) } else { b })
}

/// Cofactor-expansion determinant; exponential, used only as an oracle on
/// small matrices.
pub fn det_cofactor<R: Ring>(r: &R, m: &Mat<R::Elem>) -> R::Elem {
    let n = m.rows;
    if n == 0 {
        return r.one();
    }
    let mut acc = r.zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = det_cofactor(r, &m.submatrix(&rows, &cols));
        let term = r.mul(m.get(0, j), &minor);
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}

impl Ring for CoeffRing {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        self.embed_int(1)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CoeffRing::add(*self, a, b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CoeffRing::mul(*self, a, b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        CoeffRing::neg(*self, a)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        CoeffRing::sub(*self, a, b)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn embed_int(&self, n: i64) -> Scalar {
        CoeffRing::embed_int(*self, n)
    }
}

/// ℤ or a prime field / ℚ seen as a Euclidean domain, optionally localized
/// at the units of a target coefficient ring (ℤ → ℚ inverts every nonzero
/// integer, ℤ → 𝔽_p inverts integers prime to p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalarPid {
    pub coeff: CoeffRing,
    pub local_target: Option<CoeffRing>,
}

impl ScalarPid {
    pub fn new(coeff: CoeffRing) -> Self {
        ScalarPid { coeff, local_target: None }
    }
}

impl Ring for ScalarPid {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        self.coeff.embed_int(1)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.coeff.add(a, b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.coeff.mul(a, b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        self.coeff.neg(a)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.coeff.sub(a, b)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn embed_int(&self, n: i64) -> Scalar {
        self.coeff.embed_int(n)
    }
}

impl Euclidean for ScalarPid {
    fn size(&self, a: &Scalar) -> BigInt {
        match self.coeff {
            CoeffRing::Z => a.numer().abs(),
            _ => BigInt::from(if a.is_zero() { 0 } else { 1 }),
        }
    }

    fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match self.coeff {
            CoeffRing::Z => {
                let (q, r) = a.numer().div_mod_floor(b.numer());
                (big(q), big(r))
            }
            c => (c.div_exact(a, b).expect("division by zero"), Scalar::zero()),
        }
    }

    fn is_unit(&self, a: &Scalar) -> bool {
        self.coeff.is_unit(a)
    }

    fn unit_inv(&self, a: &Scalar) -> Option<Scalar> {
        self.coeff.inv(a)
    }

    fn normal_unit(&self, a: &Scalar) -> Scalar {
        match self.coeff {
            CoeffRing::Z => self.embed_int(if a.is_negative() { -1 } else { 1 }),
            c => c.inv(a).unwrap_or_else(|| self.one()),
        }
    }

    fn strip(&self, d: &Scalar) -> Scalar {
        if d.is_zero() {
            return d.clone();
        }
        match (self.coeff, self.local_target) {
            (CoeffRing::Z, Some(CoeffRing::Q)) => self.one(),
            (CoeffRing::Z, Some(CoeffRing::Fp(p))) => {
                let pb = BigInt::from(p);
                let mut n = d.numer().abs();
                let mut part = BigInt::from(1);
                while n.is_multiple_of(&pb) {
                    n /= &pb;
                    part *= &pb;
                }
                big(part)
            }
            (CoeffRing::Z, _) => d.clone(),
            _ => self.one(),
        }
    }

    fn fmt_elem(&self, a: &Scalar) -> String {
        crate::scalar::fmt_scalar(a)
    }
}

/// Determinant of a matrix over ℤ, ℚ or 𝔽_p: fraction-free Bareiss
/// elimination over ℤ, Gaussian elimination over fields.
pub fn scalar_det(coeff: CoeffRing, m: &Mat<Scalar>) -> Result<Scalar> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = false;
    match coeff {
        CoeffRing::Z => {
            let mut prev = Scalar::from_integer(1.into());
            for k in 0..n {
                let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(Scalar::zero());
                };
                if p != k {
                    a.swap_rows(p, k);
                    sign = !sign;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                        debug_assert!(v.is_integer());
                        a.set(i, j, v);
                    }
                    a.set(i, k, Scalar::zero());
                }
                prev = a.get(k, k).clone();
            }
            let d = if n == 0 { Scalar::from_integer(1.into()) } else { a.get(n - 1, n - 1).clone() };
            Ok(if sign { -d } else { d })
        }
        c => {
            let mut d = c.embed_int(1);
            for k in 0..n {
                let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(Scalar::zero());
                };
                if p != k {
                    a.swap_rows(p, k);
                    sign = !sign;
                }
                let piv = a.get(k, k).clone();
                d = c.mul(&d, &piv);
                let inv = c.inv(&piv).expect("nonzero in a field");
                for i in k + 1..n {
                    let f = c.mul(a.get(i, k), &inv);
                    if f.is_zero() {
                        continue;
                    }
                    for j in k..n {
                        let v = c.sub(a.get(i, j), &c.mul(&f, a.get(k, j)));
                        a.set(i, j, v);
                    }
                }
            }
            Ok(if sign { c.neg(&d) } else { d })
        }
    }
}

/// Rank of a matrix over a field.
pub fn field_rank(coeff: CoeffRing, m: &Mat<Scalar>) -> usize {
    assert!(coeff.is_field());
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(p) = (rank..a.rows).find(|&i| !a.get(i, col).is_zero()) else { continue };
        a.swap_rows(p, rank);
        let inv = coeff.inv(a.get(rank, col)).unwrap();
        for i in rank + 1..a.rows {
            let f = coeff.mul(a.get(i, col), &inv);
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let v = coeff.sub(a.get(i, j), &coeff.mul(&f, a.get(rank, j)));
                a.set(i, j, v);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn zmat(rows: &[&[i64]]) -> Mat<Scalar> {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let m = zmat(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        let z = CoeffRing::Z;
        assert_eq!(det(&z, &m).unwrap(), det_cofactor(&z, &m));
        assert_eq!(scalar_det(z, &m).unwrap(), det_cofactor(&z, &m));
        assert_eq!(scalar_det(CoeffRing::Q, &m).unwrap(), det_cofactor(&z, &m));
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let z = CoeffRing::Z;
        let m = zmat(&[&[1, 2, 0, 1], &[3, -1, 2, 2], &[0, 1, 1, -3], &[2, 0, 5, 1]]);
        let d = det(&z, &m).unwrap();
        let prod = mat_mul(&z, &adjugate(&z, &m).unwrap(), &m).unwrap();
        assert!(mat_eq(&z, &prod, &mat_scale(&z, &d, &identity(&z, 4))));
    }

    #[test]
    fn empty_determinant_is_one() {
        let z = CoeffRing::Z;
        assert_eq!(det(&z, &zmat(&[])).unwrap(), int(1));
        assert_eq!(scalar_det(z, &zmat(&[])).unwrap(), int(1));
    }

    #[test]
    fn rank_over_fp() {
        let m = zmat(&[&[1, 2], &[3, 1]]).map(|x| CoeffRing::Fp(5).coerce(x).unwrap());
        // det = -5 ≡ 0 mod 5
        assert_eq!(field_rank(CoeffRing::Fp(5), &m), 1);
    }

    #[test]
    fn strip_integers() {
        let pid = ScalarPid { coeff: CoeffRing::Z, local_target: Some(CoeffRing::Fp(3)) };
        assert_eq!(pid.strip(&int(18)), int(9));
        let pid = ScalarPid { coeff: CoeffRing::Z, local_target: Some(CoeffRing::Q) };
        assert_eq!(pid.strip(&int(18)), int(1));
    }
}
