use super::echelon::Subspace;
use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix. Maps act on column vectors: `rows` is the target
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|x| S::from_i64(*x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec<S> {
        (0..self.rows)
            .filter(|i| !self.get(*i, j).is_zero())
            .map(|i| (i, self.get(i, j).clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
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
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Row space as a subspace of `k^cols`.
    pub fn row_space(&self) -> Subspace<S> {
        Subspace::span(self.cols, (0..self.rows).map(|i| sparse::from_dense(self.row(i))))
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }
}

/// Reduced row echelon form (same shape, zero rows last) and pivot columns.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let space = m.row_space();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (i, r) in space.rows().iter().enumerate() {
        for (j, x) in r {
            out.set(i, *j, x.clone());
        }
    }
    (out, space.pivots().to_vec())
}

/// Some `x` with `a·x = b`, free variables set to zero; `None` when the
/// system is inconsistent.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Option<Matrix<S>>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + b.cols);
    for i in 0..a.rows {
        for (j, x) in a.row(i).iter().chain(b.row(i)).enumerate() {
            aug.set(i, j, x.clone());
        }
    }
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|p| *p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(n, b.cols);
    for (i, p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(*p, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn rref_examples() {
        let id = Matrix::<Q>::identity(2);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1]));

        let m = Matrix::<Q>::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m), (Matrix::from_i64(&[&[1, 2], &[0, 0]]), vec![0]));

        let m = Matrix::<Fp<2>>::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(rref(&m), (Matrix::from_i64(&[&[1, 1], &[0, 0]]), vec![0]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::<Q>::from_i64(&[&[3], &[-1]]);
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));

        let a = Matrix::<Q>::from_i64(&[&[1, 1]]);
        let x = solve(&a, &Matrix::from_i64(&[&[2]])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(&[&[2], &[0]]));

        let a = Matrix::<Q>::from_i64(&[&[0]]);
        assert_eq!(solve(&a, &Matrix::from_i64(&[&[1]])).unwrap(), None);

        assert!(solve(&a, &Matrix::zeros(2, 1)).is_err());
    }
}
