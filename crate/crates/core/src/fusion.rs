//! Fusion rings (Verlinde and closed forms), quantum dimensions, and
//! modular-group checks `S² = C`, `(ST)³ = C`.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;

use crate::affine::CosetWeight;
use crate::error::{Error, Result};
use crate::scalar::{phase, Rational, Scalar};
use crate::smatrix::{identity, max_abs, Label, SMatrix};

/// Fusion coefficients `N[a][b][c]` over a label basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionRing<L> {
    labels: Vec<L>,
    tensor: Vec<u32>,
    vacuum_index: usize,
}

impl<L: Label> FusionRing<L> {
    pub fn new(labels: Vec<L>, tensor: Vec<u32>, vacuum_index: usize) -> Result<Self> {
        let n = labels.len();
        if tensor.len() != n * n * n {
            return Err(Error::Shape {
                expected: n * n * n,
                found: tensor.len(),
            });
        }
        Ok(Self {
            labels,
            tensor,
            vacuum_index,
        })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vacuum_index(&self) -> usize {
        self.vacuum_index
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        let d = self.dim();
        self.tensor[(a * d + b) * d + c]
    }

    pub fn coefficient(&self, a: &L, b: &L, c: &L) -> Result<u32> {
        Ok(self.n(self.index_of(a)?, self.index_of(b)?, self.index_of(c)?))
    }

    pub fn index_of(&self, label: &L) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("{label} is not in the fusion basis")))
    }

    /// `a × b` as a map from outcome label to multiplicity.
    pub fn product(&self, a: &L, b: &L) -> Result<BTreeMap<usize, u32>> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok((0..self.dim())
            .filter_map(|c| {
                let n = self.n(i, j, c);
                (n > 0).then_some((c, n))
            })
            .collect())
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| self.n(a, b, c) == self.n(b, a, c))))
    }

    pub fn has_vacuum_unit(&self) -> bool {
        let d = self.dim();
        let v = self.vacuum_index;
        (0..d).all(|b| (0..d).all(|c| self.n(v, b, c) == u32::from(b == c)))
    }

    /// `Σ_e N[a][b][e] N[e][c][d] = Σ_f N[b][c][f] N[a][f][d]`.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: u64 = (0..n)
                            .map(|e| self.n(a, b, e) as u64 * self.n(e, c, d) as u64)
                            .sum();
                        let rhs: u64 = (0..n)
                            .map(|f| self.n(b, c, f) as u64 * self.n(a, f, d) as u64)
                            .sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `N[a][b][c] = Σ_x S_ax S_bx conj(S_cx) / S_0x`, rounded and checked for integrality.
pub fn verlinde<T: Scalar, L: Label>(s: &SMatrix<T, L>) -> Result<FusionRing<L>> {
    let vac = s.vacuum_index()?;
    let n = s.dim();
    let m = s.entries();
    let inv_vac: Vec<Complex<T>> = (0..n).map(|x| Complex::new(T::one(), T::zero()) / m[[vac, x]]).collect();
    let threshold = T::fusion_threshold();
    let mut tensor = vec![0u32; n * n * n];
    let name = |i: usize| s.labels()[i].to_string();
    for a in 0..n {
        for b in 0..n {
            let ab: Vec<Complex<T>> = (0..n).map(|x| m[[a, x]] * m[[b, x]] * inv_vac[x]).collect();
            for c in 0..n {
                let v = (0..n).fold(Complex::<T>::zero(), |acc, x| acc + ab[x] * m[[c, x]].conj());
                let rounded = v.re.round();
                let residual = (v - Complex::new(rounded, T::zero())).norm();
                if residual.is_nan() || residual >= threshold {
                    return Err(Error::NonIntegerFusion {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                        residual: residual.to_f64(),
                    });
                }
                let value = Scalar::to_f64(rounded) as i64;
                if value < 0 {
                    return Err(Error::NegativeFusion {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                        value,
                    });
                }
                tensor[(a * n + b) * n + c] = value as u32;
            }
        }
    }
    FusionRing::new(s.labels().to_vec(), tensor, vac)
}

/// `φ_l × φ_l' = ⊕ φ_l''` for `|l-l'| <= l'' <= min(l+l', 2k-l-l')`, `l'' ≡ l+l' mod 2`.
pub fn fusion_su2k_closed(l: usize, l2: usize, k: usize) -> Result<Vec<usize>> {
    if l > k || l2 > k {
        return Err(Error::Label(format!("su(2)_{k} labels {l}, {l2} outside 0..={k}")));
    }
    let lo = l.abs_diff(l2);
    let hi = (l + l2).min(2 * k - l - l2);
    Ok((lo..=hi).step_by(2).collect())
}

/// Closed-form fusion of diagonal-coset fields, returned as outcome → multiplicity.
///
/// With `n = ν-μ`, `n' = ν'-μ'`: if `n + n' <= k` the outcomes are
/// `Λ_{μ+μ'+i} + Λ_{ν+ν'-i}` for `i = 0..=min(n,n')`, otherwise the same weights for
/// `i = max(n,n')..=k`. Indices are reduced mod k.
pub fn fusion_coset_closed(a: &CosetWeight, b: &CosetWeight) -> Result<BTreeMap<CosetWeight, u32>> {
    if a.k() != b.k() {
        return Err(Error::Contract(format!("{a} and {b} belong to different k")));
    }
    let k = a.k();
    let (n, n2) = (a.spread(), b.spread());
    let range = if n + n2 <= k {
        0..=n.min(n2)
    } else {
        if n.max(n2) <= k / 2 {
            return Err(Error::BranchCoverage(format!(
                "{a} × {b}: n + n' > k but max(n, n') <= [k/2]"
            )));
        }
        n.max(n2)..=k
    };
    let (mu, nu) = ((a.mu() + b.mu()) as i64, (a.nu() + b.nu()) as i64);
    let mut out = BTreeMap::new();
    for i in range {
        let w = CosetWeight::new(mu + i as i64, nu - i as i64, k)?;
        *out.entry(w).or_insert(0) += 1;
    }
    Ok(out)
}

/// Quantum dimensions `d_a = S_0a / S_00` and the total dimension `1 / S_00`.
#[derive(Debug, Clone)]
pub struct QuantumDimensions<T, L> {
    pub labels: Vec<L>,
    pub dims: Vec<T>,
    pub total: T,
}

impl<T: Scalar, L: Label> QuantumDimensions<T, L> {
    pub fn get(&self, label: &L) -> Option<T> {
        self.labels.iter().position(|l| l == label).map(|i| self.dims[i])
    }
}

pub fn quantum_dimensions<T: Scalar, L: Label>(s: &SMatrix<T, L>) -> Result<QuantumDimensions<T, L>> {
    let vac = s.vacuum_index()?;
    let s00 = s.get(vac, vac).re;
    let tol = s.tolerance();
    let mut dims = Vec::with_capacity(s.dim());
    for (a, label) in s.labels().iter().enumerate() {
        let d = s.get(vac, a).re / s00;
        if d < T::one() - tol {
            return Err(Error::VacuumMisidentified {
                label: label.to_string(),
                value: d.to_f64(),
            });
        }
        dims.push(d);
    }
    Ok(QuantumDimensions {
        labels: s.labels().to_vec(),
        dims,
        total: T::one() / s00,
    })
}

/// Diagonal T data: conformal dimensions aligned with an S basis and the central charge.
#[derive(Debug, Clone, PartialEq)]
pub struct TData {
    pub dims: Vec<Rational>,
    pub central_charge: Rational,
}

impl TData {
    pub fn new(dims: Vec<Rational>, central_charge: Rational) -> Self {
        Self {
            dims,
            central_charge,
        }
    }

    /// Exact exponents `Δ - c/24`.
    pub fn exponents(&self) -> Vec<Rational> {
        let shift = self.central_charge / Rational::from_integer(24);
        self.dims.iter().map(|d| d - shift).collect()
    }

    /// `exp(2πi(Δ - c/24))`.
    pub fn phases<T: Scalar>(&self) -> Vec<Complex<T>> {
        self.exponents().into_iter().map(phase).collect()
    }
}

/// Residuals of the modular-group relations.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularReport<T> {
    pub unitarity: T,
    pub s2_minus_c: T,
    pub st3_minus_c: T,
    pub c2_minus_i: T,
    /// `C` has only `+1` entries (no signed entries).
    pub c_is_permutation: bool,
    pub tolerance: T,
}

impl<T: Scalar> ModularReport<T> {
    pub fn passed(&self) -> bool {
        self.c_is_permutation
            && [self.unitarity, self.s2_minus_c, self.st3_minus_c, self.c2_minus_i]
                .iter()
                .all(|r| *r < self.tolerance)
    }
}

/// Checks `S S† = 1`, `S² = C`, `(ST)³ = C`, `C² = 1` with `C` obtained by snapping `S²`.
pub fn verify_modular_relations<T: Scalar, L: Label>(
    s: &SMatrix<T, L>,
    t: &TData,
) -> Result<ModularReport<T>> {
    let n = s.dim();
    if t.dims.len() != n {
        return Err(Error::Shape {
            expected: n,
            found: t.dims.len(),
        });
    }
    let tol = s.tolerance();
    let m = s.entries();
    let s2 = m.dot(m);
    let slack = tol.sqrt();
    let mut c = Array2::<Complex<T>>::zeros((n, n));
    let mut unsigned = true;
    for i in 0..n {
        let mut nonzero = 0;
        for j in 0..n {
            let z = s2[[i, j]];
            let snapped = z.re.round();
            if snapped.abs() > T::one() || (z - Complex::new(snapped, T::zero())).norm() > slack {
                return Err(Error::Modularity(format!("S² entry ({i},{j}) = {z} is not in {{0, ±1}}")));
            }
            if snapped != T::zero() {
                nonzero += 1;
                unsigned &= snapped > T::zero();
            }
            c[[i, j]] = Complex::new(snapped, T::zero());
        }
        if nonzero != 1 {
            return Err(Error::Modularity(format!(
                "row {i} of S² has {nonzero} non-zero entries; not a signed permutation"
            )));
        }
    }
    let phases = t.phases::<T>();
    let st = Array2::from_shape_fn((n, n), |(i, j)| m[[i, j]] * phases[j]);
    let st3 = st.dot(&st).dot(&st);
    Ok(ModularReport {
        unitarity: s.unitarity_residual(),
        s2_minus_c: max_abs(&(&s2 - &c)),
        st3_minus_c: max_abs(&(&st3 - &c)),
        c2_minus_i: max_abs(&(c.dot(&c) - identity::<T>(n))),
        c_is_permutation: unsigned,
        tolerance: tol,
    })
}

/// `max_{a,b} |Σ_c N_ab^c d_c - d_a d_b|`.
pub fn dimension_homomorphism_residual<T: Scalar, L: Label>(
    ring: &FusionRing<L>,
    qd: &QuantumDimensions<T, L>,
) -> T {
    let n = ring.dim();
    let mut worst = T::zero();
    for a in 0..n {
        for b in 0..n {
            let lhs = (0..n).fold(T::zero(), |acc, c| acc + T::from_usize(ring.n(a, b, c) as usize) * qd.dims[c]);
            worst = worst.max((lhs - qd.dims[a] * qd.dims[b]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{s_su2k, Su2kLabel};
    use crate::coset::coset_s_compact;

    fn w(mu: i64, nu: i64, k: usize) -> CosetWeight {
        CosetWeight::new(mu, nu, k).unwrap()
    }

    #[test]
    fn su2k_closed_examples() {
        assert_eq!(fusion_su2k_closed(3, 1, 3).unwrap(), vec![2]);
        assert_eq!(fusion_su2k_closed(1, 1, 2).unwrap(), vec![0, 2]);
        assert_eq!(fusion_su2k_closed(0, 2, 4).unwrap(), vec![2]);
        assert!(fusion_su2k_closed(5, 1, 4).is_err());
    }

    #[test]
    fn su2_level_two_verlinde() {
        let ring = verlinde(&s_su2k::<f64>(2).unwrap()).unwrap();
        let one = Su2kLabel::new(1, 2).unwrap();
        let out = ring.product(&one, &one).unwrap();
        assert_eq!(out, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn coset_example_sigma2() {
        let out = fusion_coset_closed(&w(0, 2, 3), &w(0, 2, 3)).unwrap();
        assert_eq!(out, BTreeMap::from([(w(2, 2, 3), 1), (w(0, 1, 3), 1)]));
    }

    #[test]
    fn coset_current_action() {
        for k in 2..=6 {
            let j = CosetWeight::current(k);
            for b in CosetWeight::all(k) {
                let out = fusion_coset_closed(&j, &b).unwrap();
                assert_eq!(out, BTreeMap::from([(b.apply_current(1), 1)]));
                let vac = fusion_coset_closed(&CosetWeight::vacuum(k), &b).unwrap();
                assert_eq!(vac, BTreeMap::from([(b, 1)]));
            }
        }
    }

    #[test]
    fn k3_quantum_dimensions() {
        let s = coset_s_compact::<f64>(3).unwrap().s;
        let qd = quantum_dimensions(&s).unwrap();
        let delta = crate::GOLDEN_RATIO;
        let mut d = qd.dims.clone();
        d.sort_by(f64::total_cmp);
        for (x, y) in d.iter().zip([1.0, 1.0, 1.0, delta, delta, delta]) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!((qd.total - (3.0 * (delta + 2.0)).sqrt()).abs() < 1e-10);
        assert!((qd.get(&w(0, 1, 3)).unwrap() - delta).abs() < 1e-10);
    }

    #[test]
    fn t_phases_unimodular() {
        let t = coset_s_compact::<f64>(3).unwrap().t_data();
        for p in t.phases::<f64>() {
            assert!((p.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn bad_matrix_rejected() {
        let s = SMatrix::<f64, usize>::from_fn(vec![0, 1], |a, b| {
            Complex::new([[0.6, 0.8], [0.8, -0.5]][*a][*b], 0.0)
        });
        assert!(matches!(verlinde(&s), Err(Error::NonIntegerFusion { .. })));
    }
}
