//! Dense matrices over an exact ring.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination, so they work
//! unchanged over `Scalar`, `PuiseuxPoly` and `MPoly`. Field-only routines
//! (reduced row echelon form, kernels, inverses) are provided for `Scalar`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, c);
                if b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        }))
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, k: u32) -> Matrix<T> {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    /// Runs Bareiss elimination and returns `(rank, sign, last_pivot)`.
    fn bareiss(&self) -> (usize, bool, T) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut prev = T::one();
        let mut rank = 0usize;
        let mut negative = false;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for c in 0..cols {
                    a.data.swap(p * cols + c, rank * cols + c);
                }
                negative = !negative;
            }
            let pivot = a.get(rank, col).clone();
            for r in rank + 1..rows {
                let lead = a.get(r, col).clone();
                for c in col + 1..cols {
                    let num = pivot.times(a.get(r, c)).minus(&lead.times(a.get(rank, c)));
                    let v = if num.is_zero() {
                        T::zero()
                    } else {
                        num.try_div(&prev)
                            .expect("Bareiss step divides exactly in an integral domain")
                    };
                    a.set(r, c, v);
                }
                a.set(r, col, T::zero());
            }
            prev = pivot;
            rank += 1;
        }
        (rank, negative, prev)
    }

    /// Rank over the fraction field of `T`.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return T::one();
        }
        let (rank, negative, last) = self.bareiss();
        if rank < self.rows {
            T::zero()
        } else if negative {
            last.negate()
        } else {
            last
        }
    }

    /// The matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Matrix<T> {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let ii = if i < r { i } else { i + 1 };
            let jj = if j < c { j } else { j + 1 };
            self.get(ii, jj).clone()
        })
    }

    /// Classical adjugate: `adj(m)·m = det(m)·I`.
    pub fn adjugate(&self) -> Matrix<T> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        Matrix::from_fn(n, n, |i, j| {
            let d = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                d
            } else {
                d.negate()
            }
        })
    }
}

impl Matrix<Scalar> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<Scalar>, Vec<usize>) {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    a.data.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for k in c..cols {
                let v = a.get(r, k) * &inv;
                a.set(r, k, v);
            }
            for i in 0..rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for k in c..cols {
                    let v = a.get(i, k) - &(&f * a.get(r, k));
                    a.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// A basis of `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix<Scalar>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
    }

    /// Row-reduced basis of the span of the given vectors (as rows).
    pub fn span_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone());
        let (red, pivots) = m.rref();
        (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Scalar>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Scalar>::zeros(3, 3).rank(), 0);
        // multiplication by e1 in the 3-dim filiform law: e1 -> e2, e2 -> e3
        assert_eq!(m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]).rank(), 2);
    }

    #[test]
    fn det_tracks_row_swaps() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), Scalar::from_int(-1));
        assert_eq!(m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).det(), Scalar::from_int(18));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), Scalar::zero());
    }

    #[test]
    fn kernel_and_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(Scalar::is_zero));
        }
        let b = m(&[&[2, 1], &[1, 1]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn adjugate_identity() {
        let a = m(&[&[1, 2, 0], &[3, 1, 1], &[0, 2, 5]]);
        let prod = a.adjugate().mul(&a).unwrap();
        let d = a.det();
        assert_eq!(prod, Matrix::identity(3).map(|x| x * &d));
    }
}
