use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{NumError, QuadScalar, Scalar};

/// Largest number of entries a Kronecker product may produce by default.
pub const DEFAULT_KRON_CAP: usize = 1 << 26;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, NumError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumError::Ragged);
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(n_rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(n_rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, NumError> {
        if self.cols != o.rows {
            return Err(NumError::Shape { left: (self.rows, self.cols), right: (o.rows, o.cols) });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, NumError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(NumError::Shape { left: (self.rows, self.cols), right: (o.rows, o.cols) });
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Self) -> Result<Self, NumError> {
        self.zip_with(o, T::plus)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, NumError> {
        self.zip_with(o, T::minus)
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.times(s)).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn kron(&self, o: &Self) -> Result<Self, NumError> {
        self.kron_with_cap(o, DEFAULT_KRON_CAP)
    }

    pub fn kron_with_cap(&self, o: &Self, cap: usize) -> Result<Self, NumError> {
        let rows = self.rows.checked_mul(o.rows).ok_or(NumError::TooLarge { entries: usize::MAX, cap })?;
        let cols = self.cols.checked_mul(o.cols).ok_or(NumError::TooLarge { entries: usize::MAX, cap })?;
        let entries = rows.saturating_mul(cols);
        if entries > cap {
            return Err(NumError::TooLarge { entries, cap });
        }
        Ok(Self::from_fn(rows, cols, |i, j| {
            let a = self.get(i / o.rows, j / o.cols);
            if a.is_zero() {
                return T::zero();
            }
            a.times(o.get(i % o.rows, j % o.cols))
        }))
    }

    pub fn rank(&self) -> usize {
        T::rank_of_rows(self.to_rows())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Largest entrywise difference, or infinity when shapes differ.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.sub(o).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    /// Exact equality for exact scalars, tolerance comparison for floats.
    pub fn approx_eq(&self, o: &Self) -> bool {
        if self.rows != o.rows || self.cols != o.cols {
            return false;
        }
        self.data.iter().zip(&o.data).all(|(a, b)| a.close_to(b))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64_lossy)
    }
}

impl Matrix<QuadScalar> {
    /// The common quadratic field of all entries (0 for rational matrices).
    pub fn field(&self) -> Result<u64, NumError> {
        let mut d = 0;
        for x in &self.data {
            let e = x.radicand();
            if e != 0 {
                if d != 0 && d != e {
                    return Err(NumError::FieldMismatch(d, e));
                }
                d = e;
            }
        }
        Ok(d)
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        self.map(|x| Complex64::new(x.to_f64(), 0.0))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}
