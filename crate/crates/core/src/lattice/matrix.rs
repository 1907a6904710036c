//! Dense integer matrices and vector helpers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer vector; used for group elements, exponents and cone normals.
pub type Vector = Vec<BigInt>;

/// Builds a vector from machine integers.
pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![BigInt::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = BigInt::one();
    v
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[BigInt]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(k: &BigInt, a: &[BigInt]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(a: &[BigInt]) -> Vector {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

/// Concatenation of two vectors.
pub fn concat(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().chain(b).cloned().collect()
}

/// Formats a vector as `[a,b,c]`.
pub fn fmt_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix { rows, cols, data: entries.iter().map(|&e| BigInt::from(e)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                dot(row, v)
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Sub-matrix formed by the listed rows.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vector> = idx.iter().map(|&i| self.row(i)).collect();
        IntMatrix::from_rows(self.cols, &rows)
    }

    /// Sub-matrix formed by the listed columns.
    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vector> = idx.iter().map(|&j| self.col(j)).collect();
        IntMatrix::from_cols(self.rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j] * k;
            self.data[target * self.cols + j] += s;
        }
    }

    /// col[target] += k * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source] * k;
            self.data[i * self.cols + target] += s;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -&*x;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -&*x;
        }
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|i| fmt_vector(&self.row(i))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Rank over the rationals of a list of vectors of common length `n`.
pub fn rank(n: usize, vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vector> = vectors.iter().filter(|v| !is_zero(v)).cloned().collect();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let a = rows[r][col].clone();
            let b = rows[i][col].clone();
            let reduced: Vector = rows[i].iter().zip(&rows[r]).map(|(x, y)| x * &a - y * &b).collect();
            rows[i] = primitive(&reduced);
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Floor division that rounds toward negative infinity.
pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Absolute value helper kept here so callers need not import `Signed`.
pub fn abs(a: &BigInt) -> BigInt {
    a.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let c = a.mul(&b);
        assert_eq!(c, IntMatrix::from_i64(2, 2, &[14, 32, 32, 77]));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(m.determinant(), BigInt::from(6));
        let s = IntMatrix::from_i64(2, 2, &[2, 4, 4, 8]);
        assert!(s.determinant().is_zero());
    }

    #[test]
    fn rank_counts_independent_rows() {
        let vs = vec![vector(&[1, 2, 3]), vector(&[2, 4, 6]), vector(&[0, 1, 1])];
        assert_eq!(rank(3, &vs), 2);
        assert_eq!(rank(2, &[]), 0);
    }
}
