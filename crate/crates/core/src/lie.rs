//! Finite su(k) data: Cartan matrix, weights in the Dynkin basis, and the
//! Weyl group acting by permutation of orthogonal ε-coordinates.

use std::collections::HashSet;

use itertools::Itertools;
use ndarray::Array2;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Rational;

/// Largest k for which the Weyl group is materialized by default (8! = 40320).
pub const DEFAULT_WEYL_CAP: usize = 8;

/// Cartan matrix of su(k) = A_{k-1} with its exact inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanData {
    k: usize,
    cartan: Array2<i64>,
    inverse: Array2<Rational>,
    det: i64,
}

impl CartanData {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.k - 1
    }

    pub fn cartan(&self) -> &Array2<i64> {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &Array2<Rational> {
        &self.inverse
    }

    pub fn det(&self) -> i64 {
        self.det
    }
}

/// Type A_{k-1} Cartan matrix as a plain integer array; `k = 1` gives the empty matrix.
pub fn cartan_matrix(k: usize) -> Array2<i64> {
    let n = k.saturating_sub(1);
    Array2::from_shape_fn((n, n), |(i, j)| match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    })
}

pub fn cartan_data(k: usize) -> Result<CartanData> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let cartan = cartan_matrix(k);
    let exact = cartan.mapv(Rational::from_integer);
    let inverse = linalg::inverse(&exact)?;
    let det = linalg::determinant(&exact)?;
    debug_assert!(det.is_integer());
    Ok(CartanData {
        k,
        cartan,
        inverse,
        det: det.to_integer(),
    })
}

/// A weight of su(k) written in Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    dynkin: Vec<Rational>,
}

impl Weight {
    pub fn new(dynkin: Vec<Rational>) -> Self {
        Self { dynkin }
    }

    pub fn from_integers(labels: &[i64]) -> Self {
        Self::new(labels.iter().copied().map(Rational::from_integer).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Rational::zero(); rank])
    }

    /// Fundamental weight Λ_i, `1 <= i <= rank`; `i = 0` is the zero weight (affine Λ_0).
    pub fn fundamental(i: usize, rank: usize) -> Self {
        let mut w = Self::zero(rank);
        if i > 0 {
            w.dynkin[i - 1] = Rational::one();
        }
        w
    }

    /// Weyl vector: the sum of all fundamental weights.
    pub fn rho(rank: usize) -> Self {
        Self::new(vec![Rational::one(); rank])
    }

    pub fn dynkin(&self) -> &[Rational] {
        &self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.len()
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        if self.rank() != other.rank() {
            return Err(Error::Shape {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(Weight::new(
            self.dynkin.iter().zip(&other.dynkin).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Integrable at level 2: non-negative integer labels summing to at most 2.
    pub fn is_level_two_integrable(&self) -> bool {
        self.dynkin.iter().all(|a| a.is_integer() && *a >= Rational::zero())
            && self.dynkin.iter().sum::<Rational>() <= Rational::from_integer(2)
    }

    /// Orthogonal coordinates `x_j = Σ_{i >= j} a_i` (with `x_k = 0`), centred to sum zero.
    pub fn to_epsilon(&self) -> Vec<Rational> {
        let k = self.rank() + 1;
        let mut x = vec![Rational::zero(); k];
        for j in (0..k - 1).rev() {
            x[j] = x[j + 1] + self.dynkin[j];
        }
        let mean = x.iter().sum::<Rational>() / Rational::from_integer(k as i64);
        x.into_iter().map(|xi| xi - mean).collect()
    }

    /// Inverse of [`Weight::to_epsilon`]; only coordinate differences matter.
    pub fn from_epsilon(x: &[Rational]) -> Weight {
        Weight::new(x.windows(2).map(|w| w[0] - w[1]).collect())
    }
}

/// `(a|b) = aᵀ C⁻¹ b`, with simple roots of squared length 2.
pub fn weight_inner_product(a: &Weight, b: &Weight, cd: &CartanData) -> Result<Rational> {
    let r = cd.rank();
    for w in [a, b] {
        if w.rank() != r {
            return Err(Error::Shape {
                expected: r,
                found: w.rank(),
            });
        }
    }
    let inv = cd.inverse_cartan();
    let mut acc = Rational::zero();
    for i in 0..r {
        for j in 0..r {
            acc += a.dynkin[i] * inv[[i, j]] * b.dynkin[j];
        }
    }
    Ok(acc)
}

/// One Weyl group element of su(k) as a permutation of the k ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    sign: i8,
}

impl WeylElement {
    pub fn from_permutation(perm: Vec<usize>) -> Self {
        let inversions = perm
            .iter()
            .tuple_combinations()
            .filter(|(a, b)| a > b)
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Self { perm, sign }
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Parity `ε(w)`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = self.perm.iter().map(|&i| other.perm[i]).collect();
        WeylElement {
            perm,
            sign: self.sign * other.sign,
        }
    }

    /// Permutes ε-coordinates: `(w·x)_i = x_{perm[i]}`.
    pub fn permute<V: Clone>(&self, coords: &[V]) -> Vec<V> {
        self.perm.iter().map(|&i| coords[i].clone()).collect()
    }

    pub fn act(&self, w: &Weight) -> Weight {
        Weight::from_epsilon(&self.permute(&w.to_epsilon()))
    }
}

/// The full Weyl group S_k of su(k).
#[derive(Debug, Clone)]
pub struct WeylGroup {
    k: usize,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }

    /// Checks closure under composition (quadratic in the group order).
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&WeylElement> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }
}

pub fn weyl_group(k: usize) -> Result<WeylGroup> {
    weyl_group_with_cap(k, DEFAULT_WEYL_CAP)
}

pub fn weyl_group_with_cap(k: usize, cap: usize) -> Result<WeylGroup> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    if k > cap {
        return Err(Error::ResourceLimit { k, cap });
    }
    let elements = (0..k)
        .permutations(k)
        .map(WeylElement::from_permutation)
        .collect();
    Ok(WeylGroup { k, elements })
}
