//! Full Z_k Read–Rezayi modular data: sectors `(l, ρ)` under the pairing rule,
//! the u(1)_{k(k+2)} factor, and the charge lattice.

use std::fmt;

use ndarray::Array2;
use num_complex::Complex;

use crate::affine::{self, parse_pair, CosetWeight};
use crate::coset;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{phase, sin_pi, Rational, Scalar};
use crate::smatrix::SMatrix;

/// Sector of the full theory, `l mod k+2` (charged) and `ρ mod k` (neutral).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullSector {
    l: usize,
    rho: usize,
    k: usize,
}

impl FullSector {
    pub fn new(l: i64, rho: i64, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidLevel { k, min: 1 });
        }
        let l = l.rem_euclid(k as i64 + 2) as usize;
        let rho = rho.rem_euclid(k as i64) as usize;
        if !pairing_rule(l, rho, k) {
            return Err(Error::Label(format!(
                "({l},{rho}) violates the pairing rule (l-ρ mod {k}) <= ρ"
            )));
        }
        Ok(Self { l, rho, k })
    }

    /// Strict parse of `"l,rho"` with `0 <= l < k+2`, `0 <= rho < k`.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let (l, rho) = parse_pair(s)?;
        if l < 0 || l >= k as i64 + 2 || rho < 0 || rho >= k as i64 {
            return Err(Error::Label(format!("{s:?} is out of range for k = {k}")));
        }
        Self::new(l, rho, k)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_vacuum(&self) -> bool {
        self.l == 0 && self.rho == 0
    }

    /// Neutral part `Λ_{(l-ρ) mod k} + Λ_{ρ}`.
    pub fn coset_weight(&self) -> CosetWeight {
        CosetWeight::new(self.l as i64 - self.rho as i64, self.rho as i64, self.k)
            .expect("k >= 1 for a constructed sector")
    }
}

impl fmt::Display for FullSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.l, self.rho)
    }
}

fn pairing_rule(l: usize, rho: usize, k: usize) -> bool {
    (l as i64 - rho as i64).rem_euclid(k as i64) as usize <= rho
}

/// All sectors, lexicographic in `(l, ρ)`.
pub fn enumerate_sectors(k: usize) -> Result<Vec<FullSector>> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    Ok((0..k + 2)
        .flat_map(|l| (0..k).map(move |rho| (l, rho)))
        .filter(|&(l, rho)| pairing_rule(l, rho, k))
        .map(|(l, rho)| FullSector { l, rho, k })
        .collect())
}

/// Charge `l mod k(k+2)` of u(1)_{k(k+2)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct U1Charge {
    pub l: usize,
    pub modulus: usize,
}

impl fmt::Display for U1Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.l)
    }
}

/// `S^{(1)}_{l,l'} = e^{-2πi l l'/(k(k+2))} / sqrt(k(k+2))`.
pub fn u1_entry<T: Scalar>(l: i64, lp: i64, k: usize) -> Complex<T> {
    let n = (k * (k + 2)) as i64;
    phase::<T>(Rational::new(-l * lp, n)) / T::from_i64(n).sqrt()
}

pub fn s_u1<T: Scalar>(k: usize) -> Result<SMatrix<T, U1Charge>> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    let modulus = k * (k + 2);
    let labels = (0..modulus).map(|l| U1Charge { l, modulus }).collect();
    Ok(SMatrix::from_fn(labels, |a, b| u1_entry(a.l as i64, b.l as i64, k)))
}

/// `S_{(l,ρ),(l',ρ')} = k · S^{(1)}_{l,l'} · Ṡ_{Λ_{l-ρ}+Λ_ρ, Λ_{l'-ρ'}+Λ_{ρ'}}`.
pub fn full_s_product<T: Scalar>(k: usize) -> Result<SMatrix<T, FullSector>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let sectors = enumerate_sectors(k)?;
    let kk = T::from_usize(k);
    let s = SMatrix::from_fn(sectors, |a, b| {
        u1_entry::<T>(a.l as i64, b.l as i64, k)
            * affine::compact_entry::<T>(&a.coset_weight(), &b.coset_weight())
            * kk
    });
    let residual = s.unitarity_residual();
    if residual.is_nan() || residual >= s.tolerance() {
        return Err(Error::Consistency {
            check: "full S unitarity".into(),
            residual: residual.to_f64(),
        });
    }
    Ok(s)
}

/// `(2/(k+2)) e^{2πi l l'/(k+2)} sin(π([2ρ-l]_k + 1)([2ρ'-l']_k + 1)/(k+2))`.
pub fn full_compact_entry<T: Scalar>(a: &FullSector, b: &FullSector) -> Complex<T> {
    let k = a.k as i64;
    let h = k + 2;
    let bracket = |s: &FullSector| (2 * s.rho as i64 - s.l as i64).rem_euclid(k) + 1;
    let amp = T::from_f64(2.0) / T::from_i64(h) * sin_pi::<T>(Rational::new(bracket(a) * bracket(b), h));
    phase::<T>(Rational::new(a.l as i64 * b.l as i64, h)) * amp
}

pub fn full_s_compact<T: Scalar>(k: usize) -> Result<SMatrix<T, FullSector>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    Ok(SMatrix::from_fn(enumerate_sectors(k)?, full_compact_entry))
}

/// `Δ(l,ρ) = l²/(2k(k+2)) + Δ(Λ_{l-ρ} + Λ_ρ)`, aligned with `enumerate_sectors(k)`.
pub fn full_dims(k: usize) -> Result<Vec<(FullSector, Rational)>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    Ok(enumerate_sectors(k)?
        .into_iter()
        .map(|s| {
            let charged = Rational::new((s.l * s.l) as i64, (2 * k * (k + 2)) as i64);
            (s, charged + coset::coset_dimension(&s.coset_weight()))
        })
        .collect())
}

/// `c = 1 + 2(k-1)/(k+2)`.
pub fn full_central_charge(k: usize) -> Rational {
    Rational::from_integer(1) + coset::central_charge(k)
}

/// Charge lattice: Gram matrix and charge vector `Q = (1, 0, …, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeLattice {
    pub k: usize,
    pub gram: Array2<i64>,
    pub charge_vector: Vec<i64>,
}

/// Corner 3, two `C_{k-1}` blocks, and 1s coupling the charged vector to the first
/// node of each block. Positive definiteness is checked through the leading minors.
pub fn gram_matrix(k: usize) -> Result<ChargeLattice> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    let n = 2 * k - 1;
    let mut gram = Array2::<i64>::zeros((n, n));
    gram[[0, 0]] = 3;
    if k >= 2 {
        let c = crate::lie::cartan_matrix(k);
        for block in 0..2 {
            let off = 1 + block * (k - 1);
            gram[[0, off]] = 1;
            gram[[off, 0]] = 1;
            for i in 0..k - 1 {
                for j in 0..k - 1 {
                    gram[[off + i, off + j]] = c[[i, j]];
                }
            }
        }
    }
    let exact = gram.mapv(Rational::from_integer);
    if let Some(bad) = linalg::leading_minors(&exact)?.iter().position(|m| *m <= Rational::from_integer(0)) {
        return Err(Error::Lattice(format!("leading minor {} is not positive", bad + 1)));
    }
    let mut charge_vector = vec![0; n];
    charge_vector[0] = 1;
    Ok(ChargeLattice {
        k,
        gram,
        charge_vector,
    })
}

/// `ν = Qᵀ G⁻¹ Q` in exact arithmetic; must equal `k/(k+2)`.
pub fn filling_factor(cl: &ChargeLattice) -> Result<Rational> {
    let inv = linalg::inverse(&cl.gram.mapv(Rational::from_integer))?;
    let q: Vec<Rational> = cl.charge_vector.iter().map(|&x| Rational::from_integer(x)).collect();
    let n = q.len();
    let mut nu = Rational::from_integer(0);
    for i in 0..n {
        for j in 0..n {
            nu += q[i] * inv[[i, j]] * q[j];
        }
    }
    let expected = Rational::new(cl.k as i64, cl.k as i64 + 2);
    if nu != expected {
        return Err(Error::Lattice(format!("Qᵀ G⁻¹ Q = {nu}, expected {expected}")));
    }
    Ok(nu)
}
