use serde_json::Value as Json;

use crate::ring::{EuclideanDomain, Ring};
use crate::{Error, Result};

/// Dense row-major matrix over a ring whose context lives elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn new(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidElement("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidElement(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Mat { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidElement("ragged matrix rows".into()));
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    pub fn filled<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::filled(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, entries }
    }

    pub fn map<F, T>(&self, f: F) -> Mat<T>
    where
        F: FnMut(&E) -> T,
    {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::filled(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ring.mul(a, other.get(k, j));
                    let s = ring.add(out.get(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    /// Row `i` becomes `u * row_i`.
    pub fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, u: &E) {
        for c in 0..self.cols {
            let v = ring.mul(u, self.get(i, c));
            self.set(i, c, v);
        }
    }

    /// Swaps two rows.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Rows `i, j` become `(p*row_i + q*row_j, r*row_i + s*row_j)`.
    pub fn mix_rows<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, m: [&E; 4]) {
        let [p, q, r, s] = m;
        for c in 0..self.cols {
            let (x, y) = (self.get(i, c).clone(), self.get(j, c).clone());
            self.set(i, c, ring.add(&ring.mul(p, &x), &ring.mul(q, &y)));
            self.set(j, c, ring.add(&ring.mul(r, &x), &ring.mul(s, &y)));
        }
    }

    /// Columns `i, j` become `(col_i*p + col_j*r, col_i*q + col_j*s)`, i.e.
    /// right multiplication by `[[p, q], [r, s]]` on those two columns.
    pub fn mix_cols<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, m: [&E; 4]) {
        let [p, q, r, s] = m;
        for row in 0..self.rows {
            let (x, y) = (self.get(row, i).clone(), self.get(row, j).clone());
            self.set(row, i, ring.add(&ring.mul(&x, p), &ring.mul(&y, r)));
            self.set(row, j, ring.add(&ring.mul(&x, q), &ring.mul(&y, s)));
        }
    }

    pub fn is_diagonal<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || ring.is_zero(self.get(i, j))))
    }

    pub fn to_json(&self, render: impl Fn(&E) -> Json) -> Json {
        Json::Array(
            (0..self.rows)
                .map(|i| Json::Array(self.row(i).iter().map(&render).collect()))
                .collect(),
        )
    }
}

impl<E: Clone> Mat<E> {
    /// Determinant by fraction-free elimination with Euclidean pivoting:
    /// row operations reduce each column to a single nonzero entry.
    pub fn det<D: EuclideanDomain<Elem = E>>(&self, ring: &D) -> Result<E> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut acc = ring.one();
        for c in 0..n {
            loop {
                // Smallest nonzero entry in column c at or below the diagonal.
                let pivot = (c..n)
                    .filter(|&r| !ring.is_zero(m.get(r, c)))
                    .min_by(|&a, &b| ring.size(m.get(a, c)).cmp(&ring.size(m.get(b, c))));
                let Some(p) = pivot else { return Ok(ring.zero()) };
                if p != c {
                    m.swap_rows(p, c);
                    acc = ring.neg(&acc);
                }
                let mut done = true;
                for r in c + 1..n {
                    if ring.is_zero(m.get(r, c)) {
                        continue;
                    }
                    let (q, rem) = ring.div_rem(m.get(r, c), m.get(c, c));
                    let nq = ring.neg(&q);
                    let one = ring.one();
                    let zero = ring.zero();
                    m.mix_rows(ring, c, r, [&one, &zero, &nq, &one]);
                    if !ring.is_zero(&rem) {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            acc = ring.mul(&acc, m.get(c, c));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PolyRing};
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Mat<BigInt> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn products_and_transpose() {
        let z = Integers;
        let a = zmat(&[&[1, 2], &[3, 4]]);
        let b = zmat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&z, &b).unwrap(), zmat(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), zmat(&[&[1, 3], &[2, 4]]));
        assert!(a.mul(&z, &zmat(&[&[1, 2, 3]])).is_err());
        assert!(Mat::<BigInt>::from_rows(vec![]).is_err());
    }

    #[test]
    fn determinants() {
        let z = Integers;
        assert_eq!(zmat(&[&[2, 4], &[6, 8]]).det(&z).unwrap(), BigInt::from(-8));
        assert_eq!(zmat(&[&[0, 1], &[1, 0]]).det(&z).unwrap(), BigInt::from(-1));
        assert_eq!(zmat(&[&[1, 2], &[2, 4]]).det(&z).unwrap(), BigInt::from(0));
        assert_eq!(zmat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det(&z).unwrap(), BigInt::from(6));
        let f5 = PolyRing::new(5).unwrap();
        let x = f5.x();
        let one = f5.one();
        let m = Mat::from_rows(vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]]).unwrap();
        assert_eq!(m.det(&f5).unwrap(), f5.from_coeffs(&[-1, 0, 1]));
    }
}
