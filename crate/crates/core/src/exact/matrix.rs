use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Arbitrary-precision integer scalar used throughout the crate.
pub type Int = BigInt;

/// Dense integer matrix, row-major. Entries are arbitrary precision; the
/// intermediate swell of Hermite/Smith reduction is real even at small sizes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    /// Single-row matrix wrapping an integer vector.
    pub fn row_vector(v: Vec<Int>) -> Self {
        IntMatrix { rows: 1, cols: v.len(), data: v }
    }

    pub fn diagonal(diag: &[Int]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { Int::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Row-major entry slice, for canonical ordering.
    pub fn data(&self) -> &[Int] {
        &self.data
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_to_vec(&self, i: usize) -> Vec<Int> {
        self.row(i).to_vec()
    }

    pub fn col_to_vec(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Row vector times matrix; the crate's standard action convention.
    pub fn apply_row(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows, "shape mismatch in apply_row");
        let mut out = vec![Int::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[j] += vi * a;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply_col");
        let mut out = vec![Int::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Int::zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    acc += a * &v[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += c * row_j
    pub fn add_row_multiple(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = self.get(j, k) * c;
            let w = self.get(i, k) + v;
            self.set(i, k, w);
        }
    }

    /// col_i += c * col_j
    pub fn add_col_multiple(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, j) * c;
            let w = self.get(r, i) + v;
            self.set(r, i, w);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let pivot = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match pivot {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix. Panics if not unimodular; all callers
    /// hold a det = +-1 certificate first.
    pub fn inverse_unimodular(&self) -> IntMatrix {
        let (h, u) = super::hnf::hermite_form(self);
        assert_eq!(h, IntMatrix::identity(self.rows), "matrix is not unimodular");
        u
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.get(i, j).clone() } else { other.get(i - self.rows, j).clone() }
        })
    }

    pub fn submatrix_rows(&self, from: usize, to: usize) -> IntMatrix {
        Self::from_fn(to - from, self.cols, |i, j| self.get(from + i, j).clone())
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(i64::try_from(self.get(i, j)).ok()?);
            }
            out.push(row);
        }
        Some(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn mul_identity() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.mul(&IntMatrix::identity(2)), a);
        assert_eq!(IntMatrix::identity(2).mul(&a), a);
    }

    #[test]
    fn det_values() {
        assert_eq!(m(&[vec![2, 0], vec![0, 3]]).det(), Int::from(6));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).det(), Int::from(-1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).det(), Int::from(0));
        // 3x3 with a known cofactor expansion value
        assert_eq!(m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).det(), Int::from(-3));
    }

    #[test]
    fn det_needs_row_swap() {
        let a = m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(a.det(), Int::from(-1));
        assert!(a.is_unimodular());
    }

    #[test]
    fn inverse_unimodular_roundtrip() {
        let a = m(&[vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]]);
        let inv = a.inverse_unimodular();
        assert_eq!(a.mul(&inv), IntMatrix::identity(3));
        assert_eq!(inv.mul(&a), IntMatrix::identity(3));
    }

    #[test]
    fn row_and_col_application_transpose_duality() {
        let a = m(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let v = vec![Int::from(1), Int::from(-1), Int::from(2)];
        let left = a.apply_row(&v);
        let right = a.transpose().apply_col(&v);
        assert_eq!(left, right);
    }
}
