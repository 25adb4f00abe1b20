//! Modular data of the Z_k parafermion and Read–Rezayi theories.
//!
//! S matrices of su(2)_k, su(k)_2 (Weyl–Kac sum and closed form), the diagonal
//! coset and the full theory; fusion rings, quantum dimensions, modular-group
//! checks, the charge lattice, and interferometry observables.
//!
//! Numerical routines are generic over [`Scalar`] (`f32`, `f64`); weights,
//! conformal dimensions and lattice data are exact [`Rational`]s.

pub mod affine;
pub mod coset;
pub mod error;
pub mod fullcft;
pub mod fusion;
pub mod interferometry;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod smatrix;

pub use affine::{CosetWeight, Su2kLabel};
pub use coset::LmLabel;
pub use error::{Error, Result};
pub use fullcft::{ChargeLattice, FullSector, U1Charge};
pub use fusion::{FusionRing, ModularReport, TData};
pub use interferometry::{InterferencePattern, Monodromy};
pub use lie::{Weight, WeylElement, WeylGroup};
pub use scalar::{Rational, Scalar};
pub use smatrix::{Label, SMatrix};

pub type SMatrix64<L> = SMatrix<f64, L>;
pub type SMatrix32<L> = SMatrix<f32, L>;
pub type CosetSMatrix = SMatrix<f64, CosetWeight>;
pub type FullSMatrix = SMatrix<f64, FullSector>;
pub type Su2kSMatrix = SMatrix<f64, Su2kLabel>;
pub type Complex64 = num_complex::Complex<f64>;

/// Golden ratio `δ = (1+√5)/2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// The Fibonacci field `ε = Λ1 + Λ2` of the k = 3 coset.
pub fn fibonacci_epsilon() -> CosetWeight {
    CosetWeight::new(1, 2, 3).expect("valid k = 3 weight")
}
