use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, int, pow, Rational};
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols.to_vec())?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Reduced row-echelon form together with the pivot columns.
    ///
    /// Pivot search scans columns left to right and takes the first row at
    /// or below the current one with a nonzero entry, so the output is
    /// deterministic. Zero rows are kept at the bottom.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pivot;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (red, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Unique solution of `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let inv = self
            .inverse()
            .ok_or_else(|| Error::Singular(format!("{}x{} system", self.rows, self.cols)))?;
        Ok(inv.apply(b))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(&int(-1))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The `(2g+1) x (2g+1)` matrix with entry `m^k` at `(m, k)`, `0^0 = 1`.
pub fn vandermonde_matrix(g: usize) -> Matrix {
    let n = 2 * g + 1;
    Matrix::from_fn(n, n, |m, k| pow(m as i64, k as i32))
}

pub fn vandermonde_det(g: usize) -> Rational {
    vandermonde_matrix(g)
        .determinant()
        .expect("vandermonde matrix is square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::identity(3).rref(), Matrix::identity(3));
        assert_eq!(m(&[&[1, 1], &[2, 2]]).rref(), m(&[&[1, 1], &[0, 0]]));
        let v = vandermonde_matrix(1);
        assert_eq!(v.rank(), 3);
    }

    /// Product formula `prod_{i<j} (j - i)` over nodes `0..=2g`.
    fn vandermonde_product(g: usize) -> Rational {
        let n = 2 * g + 1;
        let mut acc = int(1);
        for i in 0..n {
            for j in i + 1..n {
                acc *= int((j - i) as i64);
            }
        }
        acc
    }

    #[test]
    fn vandermonde_determinants() {
        assert_eq!(vandermonde_det(1), int(2));
        assert_eq!(vandermonde_det(2), int(288));
        for g in 1..=6 {
            let d = vandermonde_det(g);
            assert!(!d.is_zero());
            assert_eq!(d, vandermonde_product(g));
        }
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.apply(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_with_fractions() {
        let a =
            Matrix::from_rows(2, vec![vec![ratio(1, 2), int(1)], vec![int(3), int(4)]]).unwrap();
        assert_eq!(a.determinant().unwrap(), int(-1));
    }
}
