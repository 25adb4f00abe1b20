use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Anything that can index a row/column of modular data.
pub trait Label: Clone + Eq + Hash + Debug + Display + Send + Sync {}

impl<L> Label for L where L: Clone + Eq + Hash + Debug + Display + Send + Sync {}

/// A square complex matrix together with its label basis and comparison tolerance.
#[derive(Debug, Clone)]
pub struct SMatrix<T, L> {
    labels: Vec<L>,
    entries: Array2<Complex<T>>,
    tolerance: T,
}

impl<T: Scalar, L: Label> SMatrix<T, L> {
    pub fn new(labels: Vec<L>, entries: Array2<Complex<T>>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c {
            return Err(Error::Shape { expected: r, found: c });
        }
        if labels.len() != r {
            return Err(Error::Shape { expected: labels.len(), found: r });
        }
        Ok(Self {
            labels,
            entries,
            tolerance: T::default_tolerance(),
        })
    }

    /// Builds the matrix entry by entry.
    pub fn from_fn(labels: Vec<L>, mut f: impl FnMut(&L, &L) -> Complex<T>) -> Self {
        let n = labels.len();
        let entries = Array2::from_shape_fn((n, n), |(i, j)| f(&labels[i], &labels[j]));
        Self {
            labels,
            entries,
            tolerance: T::default_tolerance(),
        }
    }

    pub fn try_from_fn(
        labels: Vec<L>,
        mut f: impl FnMut(&L, &L) -> Result<Complex<T>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut entries = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                entries[[i, j]] = f(&labels[i], &labels[j])?;
            }
        }
        Ok(Self {
            labels,
            entries,
            tolerance: T::default_tolerance(),
        })
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[[i, j]]
    }

    pub fn index_of(&self, label: &L) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("{label} is not in the basis")))
    }

    /// Entry addressed by labels.
    pub fn entry(&self, a: &L, b: &L) -> Result<Complex<T>> {
        Ok(self.get(self.index_of(a)?, self.index_of(b)?))
    }

    /// `max |(S S†) - I|`.
    pub fn unitarity_residual(&self) -> T {
        let prod = self.entries.dot(&conj_transpose(&self.entries));
        max_abs(&(prod - identity::<T>(self.dim())))
    }

    /// `max |S - Sᵀ|`.
    pub fn symmetry_residual(&self) -> T {
        max_abs(&(&self.entries - &self.entries.t()))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() < self.tolerance
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_residual() < self.tolerance
    }

    /// Largest entrywise difference, matched by label so basis order does not matter.
    pub fn max_abs_diff(&self, other: &SMatrix<T, L>) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::Shape {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let map = other.index_map();
        let perm: Vec<usize> = self
            .labels
            .iter()
            .map(|l| {
                map.get(l)
                    .copied()
                    .ok_or_else(|| Error::Label(format!("{l} missing from the other basis")))
            })
            .collect::<Result<_>>()?;
        let mut worst = T::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                worst = worst.max((self.get(i, j) - other.get(perm[i], perm[j])).norm());
            }
        }
        Ok(worst)
    }

    /// Same matrix presented in a different ordering of the same labels.
    pub fn reordered(&self, basis: &[L]) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::Shape {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        let idx: Vec<usize> = basis.iter().map(|l| self.index_of(l)).collect::<Result<_>>()?;
        let entries = Array2::from_shape_fn((basis.len(), basis.len()), |(i, j)| {
            self.get(idx[i], idx[j])
        });
        Ok(Self {
            labels: basis.to_vec(),
            entries,
            tolerance: self.tolerance,
        })
    }

    /// Index of the unique row whose entries are all real and strictly positive.
    pub fn vacuum_index(&self) -> Result<usize> {
        let tol = self.tolerance;
        let mut found = None;
        for i in 0..self.dim() {
            let positive = self
                .entries
                .row(i)
                .iter()
                .all(|z| z.im.abs() < tol && z.re > tol);
            if positive {
                if found.is_some() {
                    return Err(Error::VacuumNotFound);
                }
                found = Some(i);
            }
        }
        found.ok_or(Error::VacuumNotFound)
    }

    pub fn index_map(&self) -> HashMap<L, usize> {
        self.labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()
    }

    /// Relabels the basis without touching the entries.
    pub fn map_labels<M: Label>(&self, f: impl FnMut(&L) -> M) -> SMatrix<T, M> {
        SMatrix {
            labels: self.labels.iter().map(f).collect(),
            entries: self.entries.clone(),
            tolerance: self.tolerance,
        }
    }
}

pub(crate) fn identity<T: Scalar>(n: usize) -> Array2<Complex<T>> {
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::zero()
        }
    })
}

pub(crate) fn conj_transpose<T: Scalar>(m: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    m.t().mapv(|z| z.conj())
}

pub(crate) fn max_abs<T: Scalar>(m: &Array2<Complex<T>>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hadamard() -> SMatrix<f64, &'static str> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        SMatrix::from_fn(vec!["a", "b"], |x, y| {
            let sign = if *x == "b" && *y == "b" { -1.0 } else { 1.0 };
            Complex::new(sign * h, 0.0)
        })
    }

    #[test]
    fn unitary_symmetric_and_vacuum() {
        let s = hadamard();
        assert!(s.is_unitary());
        assert!(s.is_symmetric());
        assert_eq!(s.vacuum_index().unwrap(), 0);
    }

    #[test]
    fn reorder_keeps_entries() {
        let s = hadamard();
        let r = s.reordered(&["b", "a"]).unwrap();
        assert!(r.get(0, 0).re < 0.0);
        assert_eq!(s.max_abs_diff(&r).unwrap(), 0.0);
        assert!(s.reordered(&["a"]).is_err());
        assert!(s.entry(&"z", &"a").is_err());
    }

    #[test]
    fn rejects_non_square() {
        let m = Array2::<Complex<f64>>::zeros((2, 3));
        assert!(SMatrix::new(vec!["a", "b"], m).is_err());
    }
}
