use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::LinalgError;
use crate::graph::Digraph;
use crate::scalar::Real;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T: Real> Matrix<T> {
    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// The 0/1 adjacency matrix; the diagonal marks loops.
pub fn adjacency<T: Clone + Zero + One>(d: &Digraph) -> Matrix<T> {
    Matrix::from_fn(d.order(), |i, j| if d.has(i, j) { T::one() } else { T::zero() })
}

/// `S(A)` with `s_ij = √(a_ij · a_ji)`.
pub fn geometric_symmetrization<T: Real>(mat: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    let n = mat.order();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let prod = mat[(i, j)] * mat[(j, i)];
            if prod < T::zero() {
                return Err(LinalgError::NegativeProduct { i, j });
            }
            out[(i, j)] = prod.sqrt();
        }
    }
    Ok(out)
}

/// Whether a 0/1 matrix is diagonally similar to its geometric
/// symmetrization. For 0/1 matrices this happens exactly when the matrix is
/// symmetric: an entry `a_ij = 1` with `a_ji = 0` would force `d_i / d_j = 0`.
pub fn diagonally_similar_to_symmetrization(mat: &Matrix<i64>) -> bool {
    debug_assert!(mat.data.iter().all(|&x| x == 0 || x == 1), "expected a 0/1 matrix");
    let symmetric = mat.is_symmetric();
    if cfg!(debug_assertions) && mat.order() <= 4 {
        debug_assert_eq!(
            symmetric,
            diagonal_similarity_witness(mat).is_some(),
            "0/1 matrix contradicts the diagonal similarity characterization"
        );
    }
    symmetric
}

/// Brute-force search for `D = diag(d)` with `A = D⁻¹ S(A) D`, drawing the
/// `d_i` from a small grid of non-zero values. Only meant for tiny matrices.
pub fn diagonal_similarity_witness(mat: &Matrix<i64>) -> Option<Vec<f64>> {
    const GRID: [f64; 5] = [1.0, -1.0, 2.0, 0.5, -3.0];
    let n = mat.order();
    let s = geometric_symmetrization(&mat.map(|&x| x as f64)).ok()?;
    let mut d = vec![1.0; n];
    let total = GRID.len().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for di in d.iter_mut() {
            *di = GRID[c % GRID.len()];
            c /= GRID.len();
        }
        let ok = (0..n).all(|i| {
            (0..n).all(|j| (mat[(i, j)] as f64 - s[(i, j)] * d[j] / d[i]).abs() < 1e-12)
        });
        if ok {
            return Some(d);
        }
    }
    None
}
