//! Dense matrices over the integers with arbitrary-precision entries.
//!
//! Every matrix in the engine is exact: entries are `BigInt`, so no
//! computation ever overflows silently. A sparse triplet form is provided
//! for assembling large matrices entry by entry; elimination itself runs
//! on the dense form with sparsity-aware pivoting (see `snf`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Int::from(*v));
            }
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

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: &Int) {
        if !v.is_zero() {
            let e = &mut self.data[i * self.cols + j];
            *e += v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            if !e.is_zero() {
                *e = -std::mem::take(e);
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let e = &mut self.data[i * self.cols + j];
            if !e.is_zero() {
                *e = -std::mem::take(e);
            }
        }
    }

    /// row_i += lambda * row_j
    pub fn add_mul_row(&mut self, i: usize, j: usize, lambda: &Int) {
        assert_ne!(i, j);
        if lambda.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let v = self.data[j * self.cols + k].clone();
            if !v.is_zero() {
                self.data[i * self.cols + k] += v * lambda;
            }
        }
    }

    /// col_i += lambda * col_j
    pub fn add_mul_col(&mut self, i: usize, j: usize, lambda: &Int) {
        assert_ne!(i, j);
        if lambda.is_zero() {
            return;
        }
        for k in 0..self.rows {
            let v = self.data[k * self.cols + j].clone();
            if !v.is_zero() {
                self.data[k * self.cols + i] += v * lambda;
            }
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = vec![Int::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, lambda: &Int) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * lambda)
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Keeps the given columns, in order.
    pub fn select_cols(&self, which: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(self.rows, which.len(), |i, j| self.get(i, which[j]).clone())
    }

    /// Kronecker product, left factor major: entry ((i1,i2),(j1,j2)) = a[i1,j1]*b[i2,j2].
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> Int {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Sparse triplet accumulator, for assembling large matrices.
#[derive(Clone, Debug, Default)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

impl Triplets {
    pub fn new(rows: usize, cols: usize) -> Self {
        Triplets {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, i: usize, j: usize, v: Int) {
        assert!(i < self.rows && j < self.cols, "triplet out of bounds");
        if !v.is_zero() {
            self.entries.push((i, j, v));
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in &self.entries {
            m.add_to(*i, *j, v);
        }
        m
    }
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn vec_int(v: &[i64]) -> Vec<Int> {
    v.iter().map(|x| Int::from(*x)).collect()
}

pub fn vec_is_zero(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Int], lambda: &Int) -> Vec<Int> {
    a.iter().map(|x| x * lambda).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_identity() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_rows(vec![vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn row_ops() {
        let mut a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        a.add_mul_row(1, 0, &int(-3));
        assert_eq!(a, IntMatrix::from_rows(vec![vec![1, 2], vec![0, -2]]));
        a.swap_rows(0, 1);
        assert_eq!(a.get(0, 1), &int(-2));
    }

    #[test]
    fn kron_shape() {
        let a = IntMatrix::from_rows(vec![vec![1, 2]]);
        let b = IntMatrix::from_rows(vec![vec![3], vec![5]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.get(1, 1), &int(10));
    }

    #[test]
    fn triplets_accumulate() {
        let mut t = Triplets::new(2, 2);
        t.push(0, 0, int(1));
        t.push(0, 0, int(2));
        let m = t.to_dense();
        assert_eq!(m.get(0, 0), &int(3));
    }
}
