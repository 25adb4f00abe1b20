//! Fabry–Pérot observables: monodromy expectation values, backscattering
//! interference curves and a non-Abelian detection report.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::smatrix::{Label, SMatrix};

/// `⟨Ψ_ab|M|Ψ_ab⟩` for probe `a` encircling bulk `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monodromy<L, T> {
    pub probe: L,
    pub bulk: L,
    pub value: Complex<T>,
}

/// `M_ab = S_ab S_00 / (S_0a S_0b)`.
pub fn monodromy<T: Scalar, L: Label>(s: &SMatrix<T, L>, probe: &L, bulk: &L) -> Result<Monodromy<L, T>> {
    let vac = s.vacuum_index()?;
    let (a, b) = (s.index_of(probe)?, s.index_of(bulk)?);
    let tol = s.tolerance();
    for (i, label) in [(a, probe), (b, bulk)] {
        if s.get(vac, i).norm() < tol {
            return Err(Error::DegenerateDenominator {
                label: label.to_string(),
            });
        }
    }
    let value = s.get(a, b) * s.get(vac, vac) / (s.get(vac, a) * s.get(vac, b));
    Ok(Monodromy {
        probe: probe.clone(),
        bulk: bulk.clone(),
        value,
    })
}

/// Sampled `σ_xx(α) = |t1|² + |t2|² + 2 Re(conj(t1) t2 e^{iα} M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferencePattern<T> {
    pub alpha: Vec<T>,
    pub sigma_xx: Vec<T>,
    pub t1: Complex<T>,
    pub t2: Complex<T>,
    pub monodromy: Complex<T>,
}

impl<T: Scalar> InterferencePattern<T> {
    /// `|t1| |t2| |M|`.
    pub fn contrast(&self) -> T {
        self.t1.norm() * self.t2.norm() * self.monodromy.norm()
    }

    /// Contrast relative to a vacuum bulk with the same amplitudes, i.e. `|M|`.
    pub fn visibility(&self) -> T {
        self.monodromy.norm()
    }

    pub fn mean(&self) -> T {
        let n = T::from_usize(self.sigma_xx.len());
        self.sigma_xx.iter().fold(T::zero(), |acc, &x| acc + x) / n
    }
}

pub fn sigma_xx<T: Scalar>(alpha: T, t1: Complex<T>, t2: Complex<T>, m: Complex<T>) -> T {
    let two = T::from_f64(2.0);
    let osc = t1.conj() * t2 * Complex::from_polar(T::one(), alpha) * m;
    t1.norm_sqr() + t2.norm_sqr() + two * osc.re
}

/// Uniform sweep of `α` over `[0, 2π)`. Values are clamped at zero against rounding.
pub fn sigma_xx_curve<T: Scalar, L: Label>(
    s: &SMatrix<T, L>,
    probe: &L,
    bulk: &L,
    t1: Complex<T>,
    t2: Complex<T>,
    n_samples: usize,
) -> Result<InterferencePattern<T>> {
    if n_samples < 2 {
        return Err(Error::Sampling(n_samples));
    }
    let m = monodromy(s, probe, bulk)?.value;
    let step = T::TAU() / T::from_usize(n_samples);
    let alpha: Vec<T> = (0..n_samples).map(|i| step * T::from_usize(i)).collect();
    let sigma_xx = alpha
        .iter()
        .map(|&a| sigma_xx(a, t1, t2, m).max(T::zero()))
        .collect();
    Ok(InterferencePattern {
        alpha,
        sigma_xx,
        t1,
        t2,
        monodromy: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AbelianConsistent,
    NonAbelian,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::AbelianConsistent => "Abelian-consistent",
            Verdict::NonAbelian => "non-Abelian",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionRow<L, T> {
    pub bulk: L,
    pub magnitude: T,
    /// Argument of the monodromy in radians.
    pub phase: T,
    pub visibility: T,
    pub verdict: Verdict,
}

/// One row per bulk candidate; visibility is relative to the vacuum-bulk curve.
pub fn detection_report<T: Scalar, L: Label>(
    s: &SMatrix<T, L>,
    probe: &L,
    bulk_candidates: &[L],
) -> Result<Vec<DetectionRow<L, T>>> {
    let vac = s.labels()[s.vacuum_index()?].clone();
    let reference = monodromy(s, probe, &vac)?.value.norm();
    let tol = s.tolerance();
    bulk_candidates
        .iter()
        .map(|b| {
            let m = monodromy(s, probe, b)?.value;
            let magnitude = m.norm();
            let verdict = if (magnitude - T::one()).abs() < tol {
                Verdict::AbelianConsistent
            } else {
                Verdict::NonAbelian
            };
            Ok(DetectionRow {
                bulk: b.clone(),
                magnitude,
                phase: m.arg(),
                visibility: magnitude / reference,
                verdict,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::CosetWeight;
    use crate::coset::coset_s_compact;

    fn w(mu: i64, nu: i64) -> CosetWeight {
        CosetWeight::new(mu, nu, 3).unwrap()
    }

    #[test]
    fn fibonacci_monodromy() {
        let s = coset_s_compact::<f64>(3).unwrap().s;
        let eps = w(1, 2);
        let trivial = monodromy(&s, &w(0, 0), &eps).unwrap().value;
        assert!((trivial - 1.0).norm() < 1e-12);
        let m = monodromy(&s, &eps, &eps).unwrap().value;
        assert!((m - Complex::new(-0.381_966_011_250_105_1, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn vacuum_curve() {
        let s = coset_s_compact::<f64>(3).unwrap().s;
        let one = Complex::new(1.0, 0.0);
        let p = sigma_xx_curve(&s, &w(0, 0), &w(0, 0), one, one, 2).unwrap();
        assert!((p.sigma_xx[0] - 4.0).abs() < 1e-12);
        assert!(p.sigma_xx[1].abs() < 1e-12);
        assert_eq!(sigma_xx_curve(&s, &w(0, 0), &w(0, 0), one, one, 1), Err(Error::Sampling(1)));
    }

    #[test]
    fn fibonacci_curve_and_report() {
        let s = coset_s_compact::<f64>(3).unwrap().s;
        let one = Complex::new(1.0, 0.0);
        let eps = w(1, 2);
        let p = sigma_xx_curve(&s, &eps, &eps, one, one, 16).unwrap();
        assert!((p.sigma_xx[0] - 1.236_067_977_499_79).abs() < 1e-10);
        let rows = detection_report(&s, &eps, &[w(0, 0), eps]).unwrap();
        assert!((rows[0].visibility - 1.0).abs() < 1e-12);
        assert_eq!(rows[0].verdict, Verdict::AbelianConsistent);
        assert!((rows[1].visibility - 0.381_966_011_250_105).abs() < 1e-10);
        assert_eq!(rows[1].verdict, Verdict::NonAbelian);
    }
}
