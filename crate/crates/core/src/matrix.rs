//! Small dense matrices with exact arithmetic: integer matrices with
//! fraction-free determinants, and rational matrices for certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("bad rational entry '{0}'")]
    BadEntry(String),
}

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Matrix of `p` acting on basis vectors: column `j` has its 1 in row `p(j)`.
    pub fn permutation(p: &Permutation) -> Self {
        let n = p.n();
        let mut m = IntMatrix::zero(n, n);
        for j in 0..n {
            m[(p.apply(j), j)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += v * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scaled_add(&mut self, coeff: i64, other: &IntMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += coeff * b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Fraction-free Bareiss determinant; exact for any entry size.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        let det = a[n * n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-major matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = &self[(i, k)];
                if v.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = v * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn max_abs(&self) -> BigRational {
        self.data.iter().map(Signed::abs).max().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let pivot = match (k..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => r,
                None => return BigRational::zero(),
            };
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let pv = a[k * n + k].clone();
            det *= &pv;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = &a[i * n + k] / &pv;
                for j in k..n {
                    let sub = &factor * &a[k * n + j];
                    a[i * n + j] -= sub;
                }
            }
        }
        det
    }

    /// Basis of `{ x : self * x = 0 }` via reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivot_col_of_row = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !a[r * cols + col].is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..cols {
                    a.swap(row * cols + j, p * cols + j);
                }
            }
            let pv = a[row * cols + col].clone();
            for j in col..cols {
                a[row * cols + j] /= &pv;
            }
            for r in 0..rows {
                if r != row && !a[r * cols + col].is_zero() {
                    let f = a[r * cols + col].clone();
                    for j in col..cols {
                        let sub = &f * &a[row * cols + j];
                        a[r * cols + j] -= sub;
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
            if row == rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -a[r * cols + free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Entries as canonical strings: `"p/q"`, with `/q` omitted when `q = 1`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| format_rational(&self[(i, j)])).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<RatMatrix, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::Shape(r, c, i, row.len()));
            }
            for (j, s) in row.iter().enumerate() {
                m[(i, j)] = parse_rational(s)?;
            }
        }
        Ok(m)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, MatrixError> {
    let bad = || MatrixError::BadEntry(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant_matches_cofactor_small() {
        let m = IntMatrix::from_rows(vec![vec![2, -1, 3], vec![0, 4, 1], vec![-2, 5, 0]]);
        // Cofactor expansion by hand: 2*(0-5) - (-1)*(0+2) + 3*(0+8) = 16.
        assert_eq!(m.determinant(), BigInt::from(16));
        assert_eq!(IntMatrix::identity(5).determinant(), BigInt::from(1));
        let singular = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), BigInt::from(0));
    }

    #[test]
    fn rational_det_agrees_with_bareiss() {
        let m = IntMatrix::from_rows(vec![vec![3, 1, -2], vec![7, 0, 5], vec![1, 1, 1]]);
        let d1 = m.determinant();
        let d2 = m.to_rational().determinant();
        assert_eq!(BigRational::from_integer(d1), d2);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = IntMatrix::from_rows(vec![vec![1, 1, 1]]).to_rational();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn rational_strings_round_trip() {
        let mut m = RatMatrix::zero(1, 3);
        m[(0, 0)] = BigRational::new(BigInt::from(-3), BigInt::from(6));
        m[(0, 1)] = BigRational::from_integer(BigInt::from(4));
        let s = m.to_strings();
        assert_eq!(s, vec![vec!["-1/2".to_string(), "4".to_string(), "0".to_string()]]);
        assert_eq!(RatMatrix::from_strings(&s).unwrap(), m);
    }
}
