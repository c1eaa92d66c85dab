//! Minimal dense linear algebra for the (n+1)x(n+1) systems this crate
//! solves. Works over any [`Scalar`], so the same elimination code runs in
//! float and exact rational mode.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r >= 1, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(c >= 1, "matrix needs at least one column");
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
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

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Max-abs norm of `self - other`, as f64.
    pub fn max_abs_diff(&self, other: &Matrix<T>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64())
            .fold(0.0, f64::max)
    }

    fn assert_square(&self) {
        assert_eq!(self.rows, self.cols, "operation requires a square matrix");
    }

    /// Inverse by Gauss-Jordan elimination with scaled partial pivoting.
    pub fn invert(&self) -> Result<Matrix<T>> {
        self.assert_square();
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        // row scales fixed up front, used only to judge pivot magnitude
        let scales: Vec<T> = (0..n)
            .map(|i| {
                a.row(i)
                    .iter()
                    .map(|v| v.abs())
                    .fold(T::zero(), crate::scalar::max_of)
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a.get(p, col)
                        .abs()
                        .partial_cmp(&a.get(q, col).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            let pivot = a.get(pivot_row, col).clone();
            if pivot.negligible_pivot(&scales[pivot_row]) {
                return Err(Error::SingularMatrix { column: col });
            }
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let inv_pivot = T::one() / pivot;
            for j in 0..n {
                let v = a.get(col, j).clone() * inv_pivot.clone();
                a.set(col, j, v);
                let w = inv.get(col, j).clone() * inv_pivot.clone();
                inv.set(col, j, w);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a.get(i, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j).clone() - factor.clone() * a.get(col, j).clone();
                    a.set(i, j, v);
                    let w = inv.get(i, j).clone() - factor.clone() * inv.get(col, j).clone();
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by LU elimination with partial pivoting. Returns zero
    /// (or near-zero) for singular input instead of an error.
    pub fn determinant(&self) -> T {
        self.assert_square();
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&p, &q| {
                    a.get(p, col)
                        .abs()
                        .partial_cmp(&a.get(q, col).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            let pivot = a.get(pivot_row, col).clone();
            if pivot.is_zero() {
                return T::zero();
            }
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                det = -det;
            }
            det = det * pivot.clone();
            for i in col + 1..n {
                let factor = a.get(i, col).clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(i, j).clone() - factor.clone() * a.get(col, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        self.assert_square();
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        // small systems only; reuse the inverse rather than a dedicated
        // forward/back substitution path
        let inv = self.invert()?;
        Ok((0..self.rows)
            .map(|i| crate::scalar::dot(inv.row(i), b))
            .collect())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;
    use rand::{Rng, SeedableRng};

    fn rat(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    #[test]
    fn invert_identity() {
        let id = Matrix::<f64>::identity(3);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn invert_standard_simplex_vertex_matrix() {
        // vertices (0,0),(1,0),(0,1) bordered by ones
        let a = Matrix::from_rows(vec![
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ]);
        let inv = a.invert().unwrap();
        // columns are the lambda_j coefficients: (-1,-1,1), (1,0,0), (0,1,0)
        assert_eq!(inv.column(0), vec![-1.0, -1.0, 1.0]);
        assert_eq!(inv.column(1), vec![1.0, 0.0, 0.0]);
        assert_eq!(inv.column(2), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn invert_random_residual() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let m = Matrix::from_rows(
                (0..4)
                    .map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect(),
            );
            let inv = match m.invert() {
                Ok(inv) => inv,
                Err(_) => continue,
            };
            let residual = m.mul(&inv).max_abs_diff(&Matrix::identity(4));
            assert!(residual < 1e-10, "residual {residual}");
        }
    }

    #[test]
    fn invert_rational_is_exact() {
        let m = Matrix::from_rows(vec![
            vec![rat(2), rat(1), rat(0)],
            vec![rat(1), rat(3), rat(1)],
            vec![rat(0), rat(1), rat(4)],
        ]);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(
            m.invert(),
            Err(crate::error::Error::SingularMatrix { .. })
        ));
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert!(m.invert().is_err());
    }

    #[test]
    fn determinant_values() {
        assert_eq!(Matrix::<f64>::identity(4).determinant(), 1.0);
        let a = Matrix::from_rows(vec![
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ]);
        assert!((a.determinant() - 1.0).abs() < 1e-15);
        let d = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 3.0]]);
        assert_eq!(d.determinant(), 6.0);
    }

    #[test]
    fn determinant_of_inverse_is_reciprocal() {
        let m = Matrix::from_rows(vec![
            vec![3.0, 1.0, 0.5],
            vec![-1.0, 2.0, 0.0],
            vec![0.25, 0.0, 1.5],
        ]);
        let prod = m.determinant() * m.invert().unwrap().determinant();
        assert!((prod - 1.0).abs() < 1e-9);
    }

    #[test]
    fn solve_diagonal() {
        let id = Matrix::<f64>::identity(2);
        assert_eq!(id.solve(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
        let d = Matrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 4.0]]);
        assert_eq!(d.solve(&[2.0, 8.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn solve_random_residual() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m = Matrix::from_rows(
            (0..5)
                .map(|i| {
                    (0..5)
                        .map(|j| if i == j { 5.0 } else { rng.gen_range(-1.0..1.0) })
                        .collect()
                })
                .collect(),
        );
        let b: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = m.solve(&b).unwrap();
        for (i, rhs) in b.iter().enumerate() {
            let lhs = crate::scalar::dot(m.row(i), &x);
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
