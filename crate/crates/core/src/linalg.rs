//! Exact dense linear algebra over any field (rationals in practice).

use ndarray::Array2;
use num_traits::{NumOps, One, Zero};
use std::ops::Neg;

use crate::error::{Error, Result};

/// What Gauss–Jordan elimination needs from an entry type.
pub trait Field: Clone + PartialEq + Zero + One + NumOps + Neg<Output = Self> {}

impl<T> Field for T where T: Clone + PartialEq + Zero + One + NumOps + Neg<Output = T> {}

fn check_square<F>(m: &Array2<F>) -> Result<usize> {
    let (r, c) = m.dim();
    if r != c {
        return Err(Error::Shape { expected: r, found: c });
    }
    Ok(r)
}

/// Determinant by fraction-carrying Gaussian elimination.
pub fn determinant<F: Field>(m: &Array2<F>) -> Result<F> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[[r, col]].is_zero()) else {
            return Ok(F::zero());
        };
        if pivot != col {
            for j in 0..n {
                let tmp = a[[col, j]].clone();
                a[[col, j]] = a[[pivot, j]].clone();
                a[[pivot, j]] = tmp;
            }
            det = -det;
        }
        let p = a[[col, col]].clone();
        det = det * p.clone();
        for r in col + 1..n {
            let factor = a[[r, col]].clone() / p.clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[[r, j]].clone() - factor.clone() * a[[col, j]].clone();
                a[[r, j]] = v;
            }
        }
    }
    Ok(det)
}

/// Inverse by Gauss–Jordan elimination.
pub fn inverse<F: Field>(m: &Array2<F>) -> Result<Array2<F>> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut inv = Array2::from_shape_fn((n, n), |(i, j)| if i == j { F::one() } else { F::zero() });
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[[r, col]].is_zero())
            .ok_or(Error::Singular)?;
        if pivot != col {
            for j in 0..n {
                a.swap([col, j], [pivot, j]);
                inv.swap([col, j], [pivot, j]);
            }
        }
        let p = a[[col, col]].clone();
        for j in 0..n {
            a[[col, j]] = a[[col, j]].clone() / p.clone();
            inv[[col, j]] = inv[[col, j]].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[[r, col]].is_zero() {
                continue;
            }
            let factor = a[[r, col]].clone();
            for j in 0..n {
                let v = a[[r, j]].clone() - factor.clone() * a[[col, j]].clone();
                a[[r, j]] = v;
                let w = inv[[r, j]].clone() - factor.clone() * inv[[col, j]].clone();
                inv[[r, j]] = w;
            }
        }
    }
    Ok(inv)
}

/// Exact matrix product.
pub fn matmul<F: Field>(a: &Array2<F>, b: &Array2<F>) -> Result<Array2<F>> {
    let (n, m) = a.dim();
    let (m2, p) = b.dim();
    if m != m2 {
        return Err(Error::Shape { expected: m, found: m2 });
    }
    Ok(Array2::from_shape_fn((n, p), |(i, j)| {
        (0..m).fold(F::zero(), |acc, t| acc + a[[i, t]].clone() * b[[t, j]].clone())
    }))
}

/// Leading principal minors `det(m[..i, ..i])` for `i = 1..=n`.
pub fn leading_minors<F: Field>(m: &Array2<F>) -> Result<Vec<F>> {
    let n = check_square(m)?;
    (1..=n)
        .map(|i| determinant(&m.slice(ndarray::s![..i, ..i]).to_owned()))
        .collect()
}
