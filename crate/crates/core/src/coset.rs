//! The diagonal coset PF_k = (su(k)_1 ⊕ su(k)_1) / su(k)_2 and its
//! su(2)_k / u(1)_{2k} description.

use std::fmt;

use num_complex::Complex;

use crate::affine::{self, CosetWeight};
use crate::error::{Error, Result};
use crate::fusion::TData;
use crate::scalar::{phase, Rational, Scalar};
use crate::smatrix::SMatrix;

/// Coset field `Φ^l_m`: `l` is twice the su(2) spin, `m` twice its projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LmLabel {
    l: i64,
    m: i64,
    k: usize,
}

impl LmLabel {
    pub fn new(l: i64, m: i64, k: usize) -> Result<Self> {
        if l < 0 || l > k as i64 {
            return Err(Error::Label(format!("l = {l} outside 0..={k}")));
        }
        Ok(Self { l, m, k })
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Δ^l_m = l(l+2)/(4(k+2)) - m²/(4k)`, evaluated on this label as given.
    pub fn raw_dimension(&self) -> Rational {
        let k = self.k as i64;
        Rational::new(self.l * (self.l + 2), 4 * (k + 2)) - Rational::new(self.m * self.m, 4 * k)
    }
}

impl fmt::Display for LmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.m)
    }
}

/// Central charge `2(k-1)/(k+2)`.
pub fn central_charge(k: usize) -> Rational {
    let k = k as i64;
    Rational::new(2 * (k - 1), k + 2)
}

/// `Λ_μ + Λ_ν ↦ (l, m) = (ν-μ, μ+ν)`.
pub fn to_lm(w: &CosetWeight) -> LmLabel {
    LmLabel {
        l: w.spread() as i64,
        m: w.charge() as i64,
        k: w.k(),
    }
}

/// `(l, m) ↦ Λ_{(m-l)/2} + Λ_{(m+l)/2}`, canonicalized.
pub fn from_lm(lbl: &LmLabel) -> Result<CosetWeight> {
    if (lbl.l - lbl.m).rem_euclid(2) != 0 {
        return Err(Error::BranchingParity { l: lbl.l, m: lbl.m });
    }
    CosetWeight::new((lbl.m - lbl.l) / 2, (lbl.m + lbl.l) / 2, lbl.k)
}

/// Representative with `0 <= m <= l` under `Φ^l_m ≡ Φ^l_{m+2k}`, `Φ^l_m ≡ Φ^{k-l}_{m∓k}`
/// and `Φ^l_{-m} ≡ Φ^l_m`.
pub fn field_identify(lbl: &LmLabel) -> Result<LmLabel> {
    let k = lbl.k as i64;
    if lbl.l < 0 || lbl.l > k {
        return Err(Error::Identification(format!("{lbl}: l outside 0..={k}")));
    }
    if (lbl.l - lbl.m).rem_euclid(2) != 0 {
        return Err(Error::BranchingParity { l: lbl.l, m: lbl.m });
    }
    // m into (-k, k]
    let mut m = (lbl.m + k - 1).rem_euclid(2 * k) - (k - 1);
    let mut l = lbl.l;
    if m.abs() > l {
        l = k - l;
        m = if m > 0 { m - k } else { m + k };
    }
    if m.abs() > l {
        return Err(Error::Identification(format!("{lbl} has no representative with |m| <= l")));
    }
    Ok(LmLabel { l, m: m.abs(), k: lbl.k })
}

/// Conformal dimension of the coset primary `Φ(Λ_μ + Λ_ν)`.
pub fn coset_dimension(w: &CosetWeight) -> Rational {
    field_identify(&to_lm(w))
        .expect("canonical weights always identify")
        .raw_dimension()
}

/// `k(k+1)/2`, cross-checked against the enumerated weights.
pub fn count_primaries(k: usize) -> Result<usize> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    let n = k * (k + 1) / 2;
    let enumerated = CosetWeight::all(k).len();
    // (l, m) pairs with -l < m <= l and m ≡ l mod 2 number l for each l.
    let lm_pairs: usize = (0..=k).sum();
    if enumerated != n || lm_pairs != n {
        return Err(Error::Consistency {
            check: "primary count".into(),
            residual: (enumerated as f64 - n as f64).abs(),
        });
    }
    Ok(n)
}

/// S matrix with conformal data of the coset.
#[derive(Debug, Clone)]
pub struct CosetModularData<T> {
    pub s: SMatrix<T, CosetWeight>,
    /// Aligned with `s.labels()`.
    pub dims: Vec<Rational>,
    pub central_charge: Rational,
}

impl<T: Scalar> CosetModularData<T> {
    pub fn t_data(&self) -> TData {
        TData::new(self.dims.clone(), self.central_charge)
    }

    pub fn dimension(&self, w: &CosetWeight) -> Result<Rational> {
        Ok(self.dims[self.s.index_of(w)?])
    }
}

/// Closed-form coset S matrix with dimensions and central charge.
pub fn coset_s_compact<T: Scalar>(k: usize) -> Result<CosetModularData<T>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let labels = CosetWeight::all(k);
    let dims = labels.iter().map(coset_dimension).collect();
    let s = SMatrix::from_fn(labels, affine::compact_entry);
    Ok(CosetModularData {
        s,
        dims,
        central_charge: central_charge(k),
    })
}

/// `e^{2πi(μ+ν)(ρ+σ)/k} · conj(S^{su(k)_2})` with the su(k)_2 matrix supplied by the caller.
pub fn coset_s_phase_form_from<T: Scalar>(
    suk2: &SMatrix<T, CosetWeight>,
) -> Result<SMatrix<T, CosetWeight>> {
    let k = suk2.labels().first().map(CosetWeight::k).unwrap_or(0);
    SMatrix::try_from_fn(suk2.labels().to_vec(), |a, b| {
        let ph = phase::<T>(Rational::new((a.charge() * b.charge()) as i64, k as i64));
        Ok(ph * suk2.entry(a, b)?.conj())
    })
    .map(|s| s.with_tolerance(suk2.tolerance()))
}

/// Phase form built on the compact su(k)_2 matrix, checked against the closed coset form.
pub fn coset_s_phase_form<T: Scalar>(k: usize) -> Result<SMatrix<T, CosetWeight>> {
    let s = coset_s_phase_form_from(&affine::s_suk2_compact::<T>(k)?)?;
    let residual = s.max_abs_diff(&coset_s_compact::<T>(k)?.s)?;
    if residual >= s.tolerance() {
        return Err(Error::Consistency {
            check: "coset phase form vs closed form".into(),
            residual: residual.to_f64(),
        });
    }
    Ok(s)
}

/// `S^{u(1)_{2k}}_{m,m'} = e^{-2πi m m'/(2k)} / sqrt(2k)`.
pub fn u1_2k_entry<T: Scalar>(m: i64, mp: i64, k: usize) -> Complex<T> {
    let k = k as i64;
    phase::<T>(Rational::new(-m * mp, 2 * k)) / T::from_i64(2 * k).sqrt()
}

/// `S_{(l,m);(l',m')} = 2 S^{su(2)_k}_{l,l'} conj(S^{u(1)_{2k}}_{m,m'})`, moved to the
/// `Λ_μ + Λ_ν` basis through the inverse correspondence.
pub fn coset_s_via_su2k_u1<T: Scalar>(k: usize) -> Result<SMatrix<T, CosetWeight>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let su2 = affine::s_su2k::<T>(k)?;
    let lm: Vec<LmLabel> = CosetWeight::all(k).iter().map(to_lm).collect();
    let weights: Vec<CosetWeight> = lm.iter().map(from_lm).collect::<Result<_>>()?;
    let unique: std::collections::HashSet<_> = weights.iter().collect();
    if unique.len() != weights.len() {
        return Err(Error::Identification("two (l,m) labels map to the same weight".into()));
    }
    let n = lm.len();
    let two = T::from_i64(2);
    let entries = ndarray::Array2::from_shape_fn((n, n), |(i, j)| {
        let (a, b) = (&lm[i], &lm[j]);
        let s2 = su2.get(a.l as usize, b.l as usize);
        s2 * u1_2k_entry::<T>(a.m, b.m, k).conj() * two
    });
    SMatrix::new(weights, entries)
}
