//! S matrices of su(2)_k and su(k)_2: the Weyl–Kac sum, the single-term
//! level–rank form, simple-current orbits and monodromy charges.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{self, Weight, DEFAULT_WEYL_CAP};
use crate::scalar::{frac_nonpositive, inverse_roots_of_unity, phase, sin_pi, Rational, Scalar};
use crate::smatrix::SMatrix;

/// Integrable su(2)_k representation with Dynkin label `l`, `0 <= l <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Su2kLabel {
    l: usize,
    k: usize,
}

impl Su2kLabel {
    pub fn new(l: usize, k: usize) -> Result<Self> {
        if l > k {
            return Err(Error::Label(format!("su(2)_{k} label {l} outside 0..={k}")));
        }
        Ok(Self { l, k })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn all(k: usize) -> Vec<Self> {
        (0..=k).map(|l| Self { l, k }).collect()
    }

    /// Image under the simple current `J = φ_k`.
    pub fn conjugate_by_current(&self) -> Self {
        Self { l: self.k - self.l, k: self.k }
    }
}

impl fmt::Display for Su2kLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.l)
    }
}

/// The su(k)_2 weight `Λ_μ + Λ_ν`, stored canonically with `0 <= μ <= ν <= k-1`.
///
/// Indices are taken mod k (`Λ_{k+s} = Λ_s`) and the pair is unordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetWeight {
    k: usize,
    mu: usize,
    nu: usize,
}

impl CosetWeight {
    pub fn new(mu: i64, nu: i64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLevel { k, min: 1 });
        }
        let m = mu.rem_euclid(k as i64) as usize;
        let n = nu.rem_euclid(k as i64) as usize;
        Ok(Self {
            k,
            mu: m.min(n),
            nu: m.max(n),
        })
    }

    fn canonical(mu: i64, nu: i64, k: usize) -> Self {
        Self::new(mu, nu, k).expect("k >= 1 checked by caller")
    }

    /// Parses `"mu,nu"`, rejecting anything that is not already canonical.
    pub fn parse(s: &str, k: usize) -> Result<Self> {
        let (a, b) = parse_pair(s)?;
        if a < 0 || b < a || b >= k as i64 {
            return Err(Error::Label(format!(
                "{s:?} is not a weight mu,nu with 0 <= mu <= nu <= {}",
                k as i64 - 1
            )));
        }
        Self::new(a, b, k)
    }

    pub fn vacuum(k: usize) -> Self {
        Self { k, mu: 0, nu: 0 }
    }

    /// Simple current `J = Λ_1 + Λ_1`.
    pub fn current(k: usize) -> Self {
        Self::canonical(1, 1, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    /// `ν - μ`: the su(2)_k label of the orbit (and the box count of `Λ_0 + Λ_l`).
    pub fn spread(&self) -> usize {
        self.nu - self.mu
    }

    /// `μ + ν`.
    pub fn charge(&self) -> usize {
        self.mu + self.nu
    }

    pub fn is_representative(&self) -> bool {
        self.mu == 0
    }

    /// `J^power * (Λ_μ + Λ_ν) = Λ_{μ+power} + Λ_{ν+power}`.
    pub fn apply_current(&self, power: i64) -> Self {
        Self::canonical(self.mu as i64 + power, self.nu as i64 + power, self.k)
    }

    /// Finite part of the weight as an su(k) Dynkin vector (`Λ_0` contributes nothing).
    pub fn weight(&self) -> Weight {
        let rank = self.k - 1;
        Weight::fundamental(self.mu, rank)
            .add(&Weight::fundamental(self.nu, rank))
            .expect("same rank")
    }

    /// All canonical weights, grouped by simple-current orbit.
    pub fn all(k: usize) -> Vec<Self> {
        orbit_decomposition_suk2(k)
            .map(|d| d.orbits.into_iter().flat_map(|o| o.members).collect())
            .unwrap_or_else(|_| vec![Self::vacuum(k.max(1))])
    }

    /// The k = 3 ordering `[Λ0+Λ0, Λ1+Λ1, Λ2+Λ2, Λ0+Λ1, Λ0+Λ2, Λ1+Λ2]`.
    pub fn reference_basis_k3() -> Vec<Self> {
        [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
            .into_iter()
            .map(|(m, n)| Self::canonical(m, n, 3))
            .collect()
    }
}

impl fmt::Display for CosetWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.mu, self.nu)
    }
}

pub(crate) fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Label(format!("cannot parse {s:?} as two comma-separated integers"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse::<i64>().map_err(|_| bad())?;
    let b = b.trim().parse::<i64>().map_err(|_| bad())?;
    Ok((a, b))
}

/// One simple-current orbit `[Λ_0 + Λ_l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub representative: CosetWeight,
    /// `members[i] = J^i * representative`, without repetition.
    pub members: Vec<CosetWeight>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDecomposition {
    pub k: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    /// Number of orbits.
    pub fn r(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, w: &CosetWeight) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.members.contains(w))
    }
}

/// Orbit count `k/2 + 1` (k even) or `(k+1)/2` (k odd).
pub fn orbit_count(k: usize) -> usize {
    if k.is_multiple_of(2) {
        k / 2 + 1
    } else {
        k.div_ceil(2)
    }
}

pub fn orbit_decomposition_suk2(k: usize) -> Result<OrbitDecomposition> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let mut seen = std::collections::HashSet::new();
    let mut orbits = Vec::new();
    for l in 0..k {
        let rep = CosetWeight::canonical(0, l as i64, k);
        if seen.contains(&rep) {
            continue;
        }
        let mut members = vec![rep];
        let mut w = rep;
        loop {
            // Fusion with J = Λ_1 + Λ_1.
            w = w.apply_current(1);
            if w == rep {
                break;
            }
            members.push(w);
        }
        seen.extend(members.iter().copied());
        orbits.push(Orbit {
            representative: rep,
            members,
        });
    }
    let total: usize = orbits.iter().map(|o| o.members.len()).sum();
    if total != k * (k + 1) / 2 || seen.len() != total || orbits.len() != orbit_count(k) {
        return Err(Error::Consistency {
            check: "orbit partition".into(),
            residual: total as f64,
        });
    }
    Ok(OrbitDecomposition { k, orbits })
}

/// su(2)_k orbits `{l, k-l}` under `J = φ_k`.
pub fn orbit_decomposition_su2k(k: usize) -> Result<Vec<Vec<Su2kLabel>>> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    Ok((0..=k / 2)
        .map(|l| {
            let a = Su2kLabel { l, k };
            let b = a.conjugate_by_current();
            if a == b {
                vec![a]
            } else {
                vec![a, b]
            }
        })
        .collect())
}

/// `Δ(Λ_l) = l(l+2) / (4(k+2))`.
pub fn dim_su2k(l: usize, k: usize) -> Result<Rational> {
    let l = Su2kLabel::new(l, k)?.l as i64;
    let k = k as i64;
    Ok(Rational::new(l * (l + 2), 4 * (k + 2)))
}

/// Conformal dimension of `Λ_μ + Λ_ν` in su(k)_2.
pub fn dim_suk2(w: &CosetWeight) -> Rational {
    let (mu, nu, k) = (w.mu as i64, w.nu as i64, w.k as i64);
    Rational::new(
        2 * mu * (k - nu) + (k + 1) * (mu * (k - mu) + nu * (k - nu)),
        2 * k * (k + 2),
    )
}

/// `Q̃_{J^μ}(Λ_ρ + Λ_σ) = -μ(ρ+σ)/k`, reduced into `(-1, 0]`.
///
/// The closed form is checked against `Δ(J^μ*Λ) - Δ(Λ) - Δ(J^μ)`.
pub fn monodromy_charge(power: i64, w: &CosetWeight) -> Result<Rational> {
    let k = w.k as i64;
    let q = frac_nonpositive(Rational::new(-power * w.charge() as i64, k));
    let from_dims = monodromy_charge_from_dims(power, w);
    if q != from_dims {
        return Err(Error::Consistency {
            check: format!("monodromy charge of J^{power} on {w}"),
            residual: f64::from_ratio(q - from_dims).abs(),
        });
    }
    Ok(q)
}

/// Monodromy charge from the dimension-difference definition, reduced into `(-1, 0]`.
pub fn monodromy_charge_from_dims(power: i64, w: &CosetWeight) -> Rational {
    let moved = w.apply_current(power);
    let current = CosetWeight::vacuum(w.k).apply_current(power);
    frac_nonpositive(dim_suk2(&moved) - dim_suk2(w) - dim_suk2(&current))
}

fn su2k_entry<T: Scalar>(l: usize, lp: usize, k: usize) -> T {
    let h = (k + 2) as i64;
    (T::from_i64(2) / T::from_i64(h)).sqrt()
        * sin_pi::<T>(Rational::new(((l + 1) * (lp + 1)) as i64, h))
}

/// `S_{l,l'} = sqrt(2/(k+2)) sin(π(l+1)(l'+1)/(k+2))`.
pub fn s_su2k<T: Scalar>(k: usize) -> Result<SMatrix<T, Su2kLabel>> {
    if k < 1 {
        return Err(Error::InvalidLevel { k, min: 1 });
    }
    Ok(SMatrix::from_fn(Su2kLabel::all(k), |a, b| {
        Complex::new(su2k_entry(a.l, b.l, k), T::zero())
    }))
}

/// Single-term su(k)_2 entry
/// `2/sqrt(k(k+2)) · e^{2πi(μ+ν)(ρ+σ)/2k} · sin(π(ν-μ+1)(σ-ρ+1)/(k+2))`.
pub fn compact_entry<T: Scalar>(a: &CosetWeight, b: &CosetWeight) -> Complex<T> {
    let k = a.k as i64;
    let norm = T::from_i64(2) / T::from_i64(k * (k + 2)).sqrt();
    let ph = phase::<T>(Rational::new((a.charge() * b.charge()) as i64, 2 * k));
    let s = sin_pi::<T>(Rational::new(
        ((a.spread() + 1) * (b.spread() + 1)) as i64,
        k + 2,
    ));
    ph * (norm * s)
}

pub fn s_suk2_compact<T: Scalar>(k: usize) -> Result<SMatrix<T, CosetWeight>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    Ok(SMatrix::from_fn(CosetWeight::all(k), compact_entry))
}

pub fn s_suk2_weylkac<T: Scalar>(k: usize) -> Result<SMatrix<T, CosetWeight>> {
    s_suk2_weylkac_with_cap(k, DEFAULT_WEYL_CAP)
}

/// Brute-force Weyl–Kac sum over all k! Weyl group elements:
///
/// `S_{Λ,Λ'} = i^{|Δ+|} / sqrt(|M*/hM|) · Σ_w ε(w) exp(-2πi (Λ+ρ | w(Λ'+ρ)) / h)`
///
/// with `h = k+2` and `|M*/hM| = k·h^{k-1}`.
pub fn s_suk2_weylkac_with_cap<T: Scalar>(k: usize, cap: usize) -> Result<SMatrix<T, CosetWeight>> {
    let group = lie::weyl_group_with_cap(k, cap)?;
    let h = k + 2;
    let rank = k - 1;
    let labels = CosetWeight::all(k);

    // Shifted weights Λ+ρ in un-centred integer ε-coordinates and their coordinate sums.
    let rho = Weight::rho(rank);
    let coords: Vec<(Vec<i64>, i64)> = labels
        .iter()
        .map(|w| {
            let shifted = w.weight().add(&rho).expect("same rank");
            let x = integer_epsilon(&shifted);
            let sum = x.iter().sum();
            (x, sum)
        })
        .collect();

    // (a|b) = Σ x_i y_i - (Σx)(Σy)/k, so the exponent is (k·dot - SxSy) / (k h).
    let modulus = k * h;
    let roots = inverse_roots_of_unity::<T>(modulus);
    let positive_roots = k * (k - 1) / 2;
    let i_power = match positive_roots % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    };
    let index = (k as f64) * (h as f64).powi(rank as i32);
    let prefactor = i_power / T::from_f64(index).sqrt();

    let n = labels.len();
    let mut entries = ndarray::Array2::zeros((n, n));
    for i in 0..n {
        let (x, sx) = &coords[i];
        for j in 0..n {
            let (y, sy) = &coords[j];
            let mut acc = Complex::<T>::zero();
            for w in group.iter() {
                let dot: i64 = w
                    .permutation()
                    .iter()
                    .enumerate()
                    .map(|(t, &p)| x[t] * y[p])
                    .sum();
                let numer = k as i64 * dot - sx * sy;
                let z = roots[numer.rem_euclid(modulus as i64) as usize];
                if w.sign() > 0 {
                    acc = acc + z;
                } else {
                    acc = acc - z;
                }
            }
            entries[[i, j]] = prefactor * acc;
        }
    }
    SMatrix::new(labels, entries)
}

/// Integer ε-coordinates `x_j = Σ_{i >= j} a_i`, `x_k = 0`, of an integral weight.
fn integer_epsilon(w: &Weight) -> Vec<i64> {
    let k = w.rank() + 1;
    let mut x = vec![0i64; k];
    for j in (0..k - 1).rev() {
        let a = w.dynkin()[j];
        debug_assert!(a.is_integer());
        x[j] = x[j + 1] + a.to_integer();
    }
    x
}

/// Level–rank dual entry between orbit representatives `Λ_0+Λ_l`, `Λ_0+Λ_l'`:
/// `sqrt(2/k) · e^{2πi l l'/2k} · S^{su(2)_k}_{l,l'}`.
pub fn level_rank_entry<T: Scalar>(a: &CosetWeight, b: &CosetWeight) -> Result<Complex<T>> {
    if a.k != b.k {
        return Err(Error::Contract(format!("weights {a} and {b} belong to different k")));
    }
    for w in [a, b] {
        if !w.is_representative() {
            return Err(Error::Contract(format!("{w} is not of the form Λ0+Λl")));
        }
    }
    let k = a.k;
    // Λ_0+Λ_l is a single column of l boxes; its transpose is the su(2)_k row of l boxes,
    // i.e. the su(2)_k label l.
    let (boxes_a, boxes_b) = (a.nu, b.nu);
    let ph = phase::<T>(Rational::new((boxes_a * boxes_b) as i64, 2 * k as i64));
    let scale = (T::from_i64(2) / T::from_usize(k)).sqrt();
    Ok(ph * (scale * su2k_entry::<T>(boxes_a, boxes_b, k)))
}

/// Level–rank entries for all pairs of `Λ_0 + Λ_l`, `l = 0..k`.
pub fn representative_block<T: Scalar>(
    k: usize,
) -> Result<HashMap<(CosetWeight, CosetWeight), Complex<T>>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let reps: Vec<CosetWeight> = (0..k).map(|l| CosetWeight::canonical(0, l as i64, k)).collect();
    let mut block = HashMap::new();
    for a in &reps {
        for b in &reps {
            block.insert((*a, *b), level_rank_entry::<T>(a, b)?);
        }
    }
    Ok(block)
}

/// Fills the whole su(k)_2 matrix from representative entries using
/// `S_{J^μ*Λ, Λ'} = e^{-2πi Q̃_{J^μ}(Λ')} S_{Λ,Λ'}` on rows, then columns.
pub fn simple_current_extend<T: Scalar>(
    block: &HashMap<(CosetWeight, CosetWeight), Complex<T>>,
    k: usize,
) -> Result<SMatrix<T, CosetWeight>> {
    if k < 2 {
        return Err(Error::InvalidRank { k, min: 2 });
    }
    let lookup = |a: &CosetWeight, b: &CosetWeight| {
        block
            .get(&(*a, *b))
            .copied()
            .ok_or_else(|| Error::Contract(format!("representative entry ({a}; {b}) missing")))
    };
    let s = SMatrix::try_from_fn(CosetWeight::all(k), |a, b| {
        let row_rep = CosetWeight::canonical(0, a.spread() as i64, k);
        let col_rep = CosetWeight::canonical(0, b.spread() as i64, k);
        let base = lookup(&row_rep, &col_rep)?;
        let row_moved = phase::<T>(-monodromy_charge(a.mu as i64, &col_rep)?) * base;
        Ok(phase::<T>(-monodromy_charge(b.mu as i64, a)?) * row_moved)
    })?;
    let reference = s_suk2_compact::<T>(k)?;
    let residual = s.max_abs_diff(&reference)?;
    if residual >= s.tolerance() {
        return Err(Error::Consistency {
            check: "simple-current extension vs compact formula".into(),
            residual: residual.to_f64(),
        });
    }
    Ok(s)
}
