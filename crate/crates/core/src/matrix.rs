//! Square matrices over the symbolic rings.

use num_traits::Zero;
use rayon::prelude::*;

use crate::scalar::RatFunc;

/// Ring operations a matrix entry needs. Sums go through [`MatrixEntry::sum_of`]
/// so implementations can use a single common denominator.
pub trait MatrixEntry: Clone + PartialEq + Send + Sync + Zero {
    fn product(&self, other: &Self) -> Self;
    fn difference(&self, other: &Self) -> Self;
    fn sum_of(items: &[Self]) -> Self;
}

impl MatrixEntry for RatFunc {
    fn product(&self, other: &Self) -> Self {
        self * other
    }

    fn difference(&self, other: &Self) -> Self {
        self - other
    }

    fn sum_of(items: &[Self]) -> Self {
        RatFunc::sum(items)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: MatrixEntry> Matrix<T> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Matrix { n, entries }
    }

    /// Like [`Matrix::from_fn`], computing entries in parallel.
    pub fn par_from_fn(n: usize, f: impl Fn(usize, usize) -> T + Sync) -> Self {
        let entries = (0..n * n).into_par_iter().map(|idx| f(idx / n, idx % n)).collect();
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, s: usize) -> &T {
        &self.entries[r * self.n + s]
    }

    pub fn set(&mut self, r: usize, s: usize, value: T) {
        self.entries[r * self.n + s] = value;
    }

    /// Entries with their `(row, column)` indices, row-major.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().enumerate().map(move |(idx, e)| (idx / self.n, idx % self.n, e))
    }

    pub fn map<U: MatrixEntry>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Self::par_from_fn(n, |r, s| {
            let parts: Vec<T> = (0..n)
                .map(|t| self.get(r, t).product(other.get(t, s)))
                .filter(|x| !x.is_zero())
                .collect();
            T::sum_of(&parts)
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.difference(b)).collect(),
        }
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, m: u32) -> Self {
        assert!(m >= 1, "matrix power must be positive");
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        let diag: Vec<T> = (0..self.n).map(|r| self.get(r, r).clone()).collect();
        T::sum_of(&diag)
    }

    pub fn sum_entries(&self) -> T {
        T::sum_of(&self.entries)
    }

    pub fn row_sum(&self, r: usize) -> T {
        let row: Vec<T> = (0..self.n).map(|s| self.get(r, s).clone()).collect();
        T::sum_of(&row)
    }

    pub fn column_sum(&self, s: usize) -> T {
        let col: Vec<T> = (0..self.n).map(|r| self.get(r, s).clone()).collect();
        T::sum_of(&col)
    }

    /// First nonzero entry with its indices.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &T)> {
        self.indexed().find(|(_, _, e)| !e.is_zero())
    }
}
